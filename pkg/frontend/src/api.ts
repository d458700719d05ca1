import type { ExportFormat, SessionResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function readDetail(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (body && typeof body.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return res.statusText || "request failed";
  }
}

/** Thin typed client; all verification happens server-side. */
export class EditServiceClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const res = await this.fetchFn(this.baseUrl + path, init);
    if (!res.ok) throw new ApiError(res.status, await readDetail(res));
    return res;
  }

  private async json(path: string, init?: RequestInit): Promise<SessionResponse> {
    const res = await this.request(path, init);
    return (await res.json()) as SessionResponse;
  }

  createSession(
    text: string,
    s: number,
    t: number,
    format: "adj" | "tri" | "auto" = "auto",
  ): Promise<SessionResponse> {
    return this.json("/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, s, t, format }),
    });
  }

  getState(id: string): Promise<SessionResponse> {
    return this.json(`/sessions/${id}`);
  }

  flip(id: string, i: number, j: number): Promise<SessionResponse> {
    return this.json(`/sessions/${id}/flip`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ i, j }),
    });
  }

  undo(id: string): Promise<SessionResponse> {
    return this.json(`/sessions/${id}/undo`, { method: "POST" });
  }

  async exportText(id: string, format: ExportFormat): Promise<string> {
    const res = await this.request(`/sessions/${id}/export?format=${format}`);
    return res.text();
  }
}
