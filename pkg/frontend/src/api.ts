// Thin typed client over the /v1 API. Every state change in the app goes
// through this class; the UI itself never mutates state locally.

import type {
  AppliedPath,
  BlockPayload,
  CreatedSession,
  Layout,
  Recommendation,
  ResultBlock,
  VariantMenu,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, detail: unknown) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.status = status;
    this.detail = detail;
  }
}

export class ApiClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const text = await response.text();
    let payload: unknown = null;
    if (text) {
      try {
        payload = JSON.parse(text);
      } catch {
        payload = text;
      }
    }
    if (!response.ok) {
      const detail =
        payload && typeof payload === "object" && "detail" in payload
          ? (payload as { detail: unknown }).detail
          : payload;
      throw new ApiError(response.status, detail ?? response.statusText);
    }
    return payload as T;
  }

  createSession(topic: string, seed?: number): Promise<CreatedSession> {
    const body: Record<string, unknown> = { topic };
    if (seed !== undefined) body.seed = seed;
    return this.request("POST", "/v1/sessions", body);
  }

  // Raw payload: compatibility is the caller's concern (version banner).
  getSession(sessionId: string): Promise<unknown> {
    return this.request("GET", `/v1/sessions/${sessionId}`);
  }

  createBlock(
    sessionId: string,
    input: {
      property: string;
      direction: string;
      typicality: number;
      parent?: string | null;
      anchor_result_item?: string | null;
    },
  ): Promise<BlockPayload> {
    const body: Record<string, unknown> = {
      property: input.property,
      direction: input.direction,
      typicality: input.typicality,
    };
    if (input.parent) body.parent = input.parent;
    if (input.anchor_result_item) body.anchor_result_item = input.anchor_result_item;
    return this.request("POST", `/v1/sessions/${sessionId}/blocks`, body);
  }

  refine(blockId: string, mode: string, anchor?: string): Promise<BlockPayload> {
    const body: Record<string, unknown> = { mode };
    if (anchor !== undefined) body.anchor = anchor;
    return this.request("POST", `/v1/blocks/${blockId}/suggestions:refine`, body);
  }

  realizeResults(blockId: string): Promise<ResultBlock> {
    return this.request("POST", `/v1/blocks/${blockId}/results`);
  }

  recommend(blockId: string, property: string): Promise<Recommendation> {
    return this.request("POST", `/v1/blocks/${blockId}/recommend`, { property });
  }

  copyBlock(sessionId: string, sourceBlockId: string, parent?: string | null): Promise<BlockPayload> {
    const body: Record<string, unknown> = { source_block_id: sourceBlockId };
    if (parent) body.parent = parent;
    return this.request("POST", `/v1/sessions/${sessionId}/copy-block`, body);
  }

  copyPathLiteral(
    sessionId: string,
    path: string[],
    targetParent?: string | null,
  ): Promise<{ applied: AppliedPath }> {
    const body: Record<string, unknown> = { mode: "literal", path };
    if (targetParent) body.target_parent = targetParent;
    return this.request("POST", `/v1/sessions/${sessionId}/copy-path`, body);
  }

  copyPathMenu(
    sessionId: string,
    path: string[],
    targetParent?: string | null,
  ): Promise<{ variants: VariantMenu }> {
    const body: Record<string, unknown> = { mode: "adaptive", path };
    if (targetParent) body.target_parent = targetParent;
    return this.request("POST", `/v1/sessions/${sessionId}/copy-path`, body);
  }

  applyPathChoice(
    sessionId: string,
    path: string[],
    choice: string,
    targetParent?: string | null,
  ): Promise<{ applied: AppliedPath }> {
    const body: Record<string, unknown> = { mode: "adaptive", path, choice };
    if (targetParent) body.target_parent = targetParent;
    return this.request("POST", `/v1/sessions/${sessionId}/copy-path`, body);
  }

  getAnalytics(sessionId: string): Promise<Record<string, unknown>> {
    return this.request("GET", `/v1/sessions/${sessionId}/analytics`);
  }

  getLayout(sessionId: string): Promise<Layout> {
    return this.request("GET", `/v1/sessions/${sessionId}/layout`);
  }

  putLayout(sessionId: string, layout: Layout): Promise<{ ok: boolean }> {
    return this.request("PUT", `/v1/sessions/${sessionId}/layout`, layout);
  }

  imageUrl(sessionId: string, imageHash: string): string {
    return `${this.baseUrl}/v1/sessions/${sessionId}/images/${imageHash}`;
  }
}
