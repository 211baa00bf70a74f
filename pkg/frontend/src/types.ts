// Payload shapes of the /v1 JSON API.

export interface PropertySpec {
  name: string;
  kind: "text" | "image";
  origin: string;
}

export interface SuggestionContent {
  kind: "text" | "image";
  text?: string | null;
  image_hash?: string | null;
  prompt?: string | null;
}

export interface Suggestion {
  id: string;
  content: SuggestionContent;
  source_direction: string;
  similarity_to_input: number;
  state: "active" | "deleted" | "bookmarked";
  candidate_id?: string | null;
}

export interface ReuseOrigin {
  source_block_id: string;
  mode: "block_copy" | "path_literal" | "path_adaptive";
}

export interface Block {
  id: string;
  property: string;
  direction: string;
  typicality: number;
  created_at: number;
  suggestions: Suggestion[];
  reuse_origin: ReuseOrigin | null;
  anchor_result_item: string | null;
  evolution_parent_id: string | null;
}

export interface ResultItem {
  suggestion_id: string;
  final_prompt: string;
  image_hash: string | null;
  error: string | null;
}

export interface ResultBlock {
  id: string;
  parent_block_id: string;
  created_at: number;
  items: ResultItem[];
}

export interface EventRecord {
  seq: number;
  kind: string;
  payload: Record<string, unknown>;
}

export interface SessionSnapshot {
  id: string;
  topic: string;
  seed: number;
  initial_properties: PropertySpec[];
  properties: PropertySpec[];
  blocks: Record<string, Block>;
  results: Record<string, ResultBlock>;
  edges: [string, string][];
  events: EventRecord[];
}

export interface CreatedSession {
  session_id: string;
  topic: string;
  seed: number;
  properties: PropertySpec[];
}

export interface BlockPayload extends Block {
  parent_id: string | null;
  results: ResultBlock[];
}

export interface VariantStep {
  id: string;
  property: string;
  direction: string;
  novelty: number;
}

export type VariantMenu = Record<string, VariantStep[]>;

export interface AppliedPath {
  block_ids: string[];
  variant: string;
  blocks: BlockPayload[];
}

export interface Recommendation {
  typical: string;
  unique: string;
}

export interface NodePosition {
  x: number;
  y: number;
}

export type Layout = Record<string, NodePosition>;

const REQUIRED_SNAPSHOT_KEYS = [
  "id",
  "topic",
  "seed",
  "properties",
  "blocks",
  "results",
  "edges",
  "events",
] as const;

/** True when the payload carries every field this client was built against. */
export function snapshotCompatible(payload: unknown): payload is SessionSnapshot {
  if (typeof payload !== "object" || payload === null) return false;
  return REQUIRED_SNAPSHOT_KEYS.every((key) => key in (payload as object));
}
