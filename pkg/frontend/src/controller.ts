import { ApiError, EditServiceClient } from "./api.js";
import { buildGrid, type GridModel } from "./matrix.js";
import { MutationQueue } from "./queue.js";
import type { ExportFormat, Report, SessionInfo, SessionResponse } from "./types.js";

export interface EditorState {
  session: SessionInfo | null;
  report: Report | null;
  selectedViolation: number | null;
  error: string | null;
  busy: boolean;
}

export type Listener = (state: EditorState) => void;

/**
 * Server-authoritative editor state.  No flip is applied optimistically:
 * cells always reflect the last response, and mutations are queued so only
 * one is in flight per session.
 */
export class EditorController {
  private state: EditorState = {
    session: null,
    report: null,
    selectedViolation: null,
    error: null,
    busy: false,
  };
  private readonly queue = new MutationQueue();
  private readonly listeners: Listener[] = [];

  constructor(private readonly api: EditServiceClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
    listener(this.state);
  }

  getState(): EditorState {
    return this.state;
  }

  grid(): GridModel | null {
    if (!this.state.session || !this.state.report) return null;
    return buildGrid(this.state.session, this.state.report, this.state.selectedViolation);
  }

  private emit(patch: Partial<EditorState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private adopt(data: SessionResponse): void {
    this.emit({
      session: data.session,
      report: data.report,
      selectedViolation: null,
      error: null,
      busy: this.queue.pending > 0,
    });
  }

  private fail(err: unknown): void {
    const message =
      err instanceof ApiError
        ? err.status === 404
          ? "session expired — reload the coloring"
          : err.detail
        : String(err);
    // non-destructive: keep the last good session/report on screen
    this.emit({ error: message, busy: this.queue.pending > 0 });
  }

  async load(text: string, s: number, t: number): Promise<void> {
    this.emit({ busy: true, error: null });
    try {
      this.adopt(await this.api.createSession(text, s, t));
    } catch (err) {
      this.fail(err);
    }
  }

  /** Queued; a click during a round-trip waits for its turn. */
  flip(i: number, j: number): Promise<void> {
    const id = this.state.session?.id;
    if (!id) return Promise.resolve();
    this.emit({ busy: true });
    return this.queue.run(async () => {
      try {
        this.adopt(await this.api.flip(id, i, j));
      } catch (err) {
        this.fail(err);
      }
    });
  }

  undo(): Promise<void> {
    const id = this.state.session?.id;
    if (!id) return Promise.resolve();
    this.emit({ busy: true });
    return this.queue.run(async () => {
      try {
        this.adopt(await this.api.undo(id));
      } catch (err) {
        this.fail(err);
      }
    });
  }

  async exportText(format: ExportFormat): Promise<string | null> {
    const id = this.state.session?.id;
    if (!id) return null;
    try {
      return await this.api.exportText(id, format);
    } catch (err) {
      this.fail(err);
      return null;
    }
  }

  selectViolation(index: number | null): void {
    this.emit({ selectedViolation: index });
  }
}
