/** Message boundary to the core: every request is a serialized action or a
 * query; every response is a scene, a signature listing, or a structured
 * error.  The transport is injectable so tests can fake the core.
 */

import type { Action, Boundary } from "./actions.js";
import type { SceneElements } from "./scene.js";

export interface SceneResponse {
  svg: string | null;
  elements: SceneElements | null;
  view: string;
  dims: number;
  diagram_dimension: number | null;
  singular_height: number | null;
  log_length: number;
}

export interface SignatureEntry {
  id: number;
  name: string;
  dimension: number;
  color: string;
  shape: string;
  invertible: boolean;
}

export interface AttachmentOption {
  id: number;
  name: string;
  offsets: number[];
}

export interface CoreStats {
  live: number;
  dead: number;
  memo: number;
  memo_hits: number;
  memo_misses: number;
  interned_total: number;
}

export class CoreError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export interface Transport {
  request(method: string, path: string, body?: unknown): Promise<unknown>;
}

export class HttpTransport implements Transport {
  constructor(private base: string) {}

  async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await res.text();
    let payload: unknown = null;
    if (text) {
      try {
        payload = JSON.parse(text);
      } catch {
        payload = null;
      }
    }
    if (!res.ok) {
      const message =
        payload !== null &&
        typeof payload === "object" &&
        "error" in (payload as Record<string, unknown>)
          ? String((payload as Record<string, unknown>)["error"])
          : `request failed with status ${res.status}`;
      throw new CoreError(res.status, message);
    }
    return payload;
  }
}

export class CoreClient {
  constructor(private transport: Transport) {}

  scene(): Promise<SceneResponse> {
    return this.transport.request("GET", "/scene") as Promise<SceneResponse>;
  }

  async signature(): Promise<SignatureEntry[]> {
    const body = (await this.transport.request("GET", "/signature")) as {
      entries: SignatureEntry[];
    };
    return body.entries;
  }

  act(action: Action): Promise<SceneResponse> {
    return this.transport.request(
      "POST",
      "/actions",
      action,
    ) as Promise<SceneResponse>;
  }

  undo(): Promise<SceneResponse> {
    return this.transport.request("POST", "/undo") as Promise<SceneResponse>;
  }

  redo(): Promise<SceneResponse> {
    return this.transport.request("POST", "/redo") as Promise<SceneResponse>;
  }

  async attachments(boundary: Boundary): Promise<AttachmentOption[]> {
    const body = (await this.transport.request(
      "GET",
      `/attachments?boundary=${boundary}`,
    )) as { items: AttachmentOption[] };
    return body.items;
  }

  async session(): Promise<string> {
    const body = (await this.transport.request("GET", "/session")) as {
      log: string;
    };
    return body.log;
  }

  loadSession(log: string): Promise<SceneResponse> {
    return this.transport.request("PUT", "/session", {
      log,
    }) as Promise<SceneResponse>;
  }

  stats(): Promise<CoreStats> {
    return this.transport.request("GET", "/stats") as Promise<CoreStats>;
  }
}
