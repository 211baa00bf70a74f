// Read-only view over a session snapshot; all derived graph helpers live here.

import type { Block, ResultBlock, SessionSnapshot } from "./types.js";

export class SessionView {
  constructor(readonly snapshot: SessionSnapshot) {}

  get id(): string {
    return this.snapshot.id;
  }

  blocksInOrder(): Block[] {
    return Object.values(this.snapshot.blocks).sort((a, b) => a.created_at - b.created_at);
  }

  block(blockId: string): Block | undefined {
    return this.snapshot.blocks[blockId];
  }

  parentOf(blockId: string): string | null {
    for (const [parent, child] of this.snapshot.edges) {
      if (child === blockId) return parent;
    }
    return null;
  }

  childrenOf(blockId: string): string[] {
    return this.snapshot.edges
      .filter(([parent]) => parent === blockId)
      .map(([, child]) => child)
      .sort((a, b) => (this.snapshot.blocks[a]?.created_at ?? 0) - (this.snapshot.blocks[b]?.created_at ?? 0));
  }

  /** Chain of block ids from the root down to (and including) blockId. */
  chainTo(blockId: string): string[] {
    const chain = [blockId];
    let cursor = this.parentOf(blockId);
    while (cursor !== null) {
      chain.unshift(cursor);
      cursor = this.parentOf(cursor);
    }
    return chain;
  }

  depth(blockId: string): number {
    return this.chainTo(blockId).length - 1;
  }

  resultsFor(blockId: string): ResultBlock[] {
    return Object.values(this.snapshot.results)
      .filter((r) => r.parent_block_id === blockId)
      .sort((a, b) => a.created_at - b.created_at);
  }

  latestResult(blockId: string): ResultBlock | undefined {
    const all = this.resultsFor(blockId);
    return all[all.length - 1];
  }

  propertyBlocks(property: string): Block[] {
    return this.blocksInOrder().filter((b) => b.property === property);
  }

  propertyKind(name: string): "text" | "image" {
    return this.snapshot.properties.find((p) => p.name === name)?.kind ?? "text";
  }

  /** Structural fingerprint used to compare canvases after a reload. */
  structure(): {
    blocks: { id: string; property: string; direction: string; typicality: number; suggestions: string[] }[];
    edges: [string, string][];
    results: { id: string; parent: string; items: number }[];
  } {
    return {
      blocks: this.blocksInOrder().map((b) => ({
        id: b.id,
        property: b.property,
        direction: b.direction,
        typicality: b.typicality,
        suggestions: b.suggestions.filter((s) => s.state !== "deleted").map((s) => s.id),
      })),
      edges: [...this.snapshot.edges].sort(),
      results: Object.values(this.snapshot.results)
        .sort((a, b) => a.created_at - b.created_at)
        .map((r) => ({ id: r.id, parent: r.parent_block_id, items: r.items.length })),
    };
  }
}
