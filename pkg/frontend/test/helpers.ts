import type { FetchLike } from "../src/api.js";

export interface Route {
  method: string;
  path: string;
  status?: number;
  json?: unknown;
  text?: string;
}

/** Scripted fetch: consumes routes in order, records every call. */
export function scriptedFetch(routes: Route[]): { fetch: FetchLike; calls: string[] } {
  const queue = [...routes];
  const calls: string[] = [];
  const fetchFn: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    calls.push(`${method} ${input}`);
    const route = queue.shift();
    if (!route) throw new Error(`unexpected request: ${method} ${input}`);
    if (route.method !== method || !String(input).endsWith(route.path)) {
      throw new Error(
        `expected ${route.method} ${route.path}, got ${method} ${input}`,
      );
    }
    const status = route.status ?? 200;
    if (route.text !== undefined) {
      return new Response(route.text, { status, headers: { "Content-Type": "text/plain" } });
    }
    return new Response(JSON.stringify(route.json ?? {}), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetch: fetchFn, calls };
}

export function deferred<T>(): { promise: Promise<T>; resolve: (v: T) => void } {
  let resolve!: (v: T) => void;
  const promise = new Promise<T>((res) => {
    resolve = res;
  });
  return { promise, resolve };
}
