import { EditServiceClient } from "./api.js";
import { EditorController } from "./controller.js";
import { renderErrorBanner, renderGrid, renderStatus, renderViolationList } from "./render.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function download(name: string, text: string): void {
  const blob = new Blob([text], { type: "text/plain" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

export function boot(): void {
  const api = new EditServiceClient(
    (document.body.dataset.apiBase ?? "").replace(/\/$/, ""),
  );
  const controller = new EditorController(api);

  const gridHost = el<HTMLDivElement>("grid");
  const statusHost = el<HTMLDivElement>("status");
  const listHost = el<HTMLDivElement>("violations");
  const bannerHost = el<HTMLDivElement>("banner");
  const undoButton = el<HTMLButtonElement>("undo");

  controller.subscribe((state) => {
    bannerHost.innerHTML = renderErrorBanner(state.error);
    const grid = controller.grid();
    if (!grid) {
      gridHost.innerHTML = "";
      statusHost.innerHTML = "";
      listHost.innerHTML = "";
      return;
    }
    gridHost.innerHTML = renderGrid(grid);
    statusHost.innerHTML = renderStatus(grid);
    listHost.innerHTML = renderViolationList(grid.violations, state.selectedViolation);
    undoButton.disabled = (state.session?.undo_depth ?? 0) === 0 || state.busy;
  });

  gridHost.addEventListener("click", (event) => {
    const cell = (event.target as HTMLElement).closest<HTMLElement>("td.cell");
    if (!cell) return;
    void controller.flip(Number(cell.dataset.i), Number(cell.dataset.j));
  });

  listHost.addEventListener("click", (event) => {
    const item = (event.target as HTMLElement).closest<HTMLElement>("li[data-violation]");
    if (!item) return;
    controller.selectViolation(Number(item.dataset.violation));
    document.querySelector(".cell.selected")?.scrollIntoView({ block: "center" });
  });

  el<HTMLButtonElement>("load").addEventListener("click", () => {
    const text = el<HTMLTextAreaElement>("input-text").value;
    const s = Number(el<HTMLInputElement>("input-s").value);
    const t = Number(el<HTMLInputElement>("input-t").value);
    void controller.load(text, s, t);
  });

  undoButton.addEventListener("click", () => void controller.undo());

  el<HTMLButtonElement>("export-adj").addEventListener("click", async () => {
    const text = await controller.exportText("adj");
    if (text !== null) download("witness.adj", text);
  });
  el<HTMLButtonElement>("export-tri").addEventListener("click", async () => {
    const text = await controller.exportText("tri");
    if (text !== null) download("witness.tri", text);
  });
}

if (typeof document !== "undefined" && document.getElementById("grid")) {
  boot();
}
