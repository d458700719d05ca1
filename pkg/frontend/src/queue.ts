/**
 * Serializes mutations: at most one request in flight, later calls wait
 * their turn in arrival order.  Errors break only their own caller; the
 * chain itself stays usable.
 */
export class MutationQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private depth = 0;

  get pending(): number {
    return this.depth;
  }

  run<T>(task: () => Promise<T>): Promise<T> {
    this.depth += 1;
    const next = this.tail.then(task).finally(() => {
      this.depth -= 1;
    });
    this.tail = next.catch(() => undefined);
    return next;
  }
}
