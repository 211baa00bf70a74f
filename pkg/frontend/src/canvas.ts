// Node-link rendering of the exploration: block nodes, result grids, edges.
// Geometry is client-owned; nothing here changes server state directly.

import type { SessionView } from "./store.js";
import type { Block, Layout, NodePosition, Suggestion } from "./types.js";

export interface CanvasHandlers {
  onRefine(blockId: string, mode: string, anchor?: string): void;
  onRealize(blockId: string): void;
  onChainFrom(blockId: string): void;
  onCopyPathTo(blockId: string): void;
  imageUrl(imageHash: string): string;
  readOnly: boolean;
}

const NODE_W = 240;
const NODE_H = 150;
const GAP_X = 90;
const GAP_Y = 40;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Grid auto-layout: columns by chain depth, rows by visual order. */
export function defaultLayout(view: SessionView): Layout {
  const layout: Layout = {};
  const rows: Record<number, number> = {};
  for (const block of view.blocksInOrder()) {
    const depth = view.depth(block.id);
    const row = rows[depth] ?? 0;
    rows[depth] = row + 1;
    layout[block.id] = {
      x: 40 + depth * (NODE_W + GAP_X),
      y: 40 + row * (NODE_H + GAP_Y + 120),
    };
  }
  return layout;
}

function suggestionChip(
  block: Block,
  suggestion: Suggestion,
  handlers: CanvasHandlers,
): HTMLElement {
  const chip = el("div", "suggestion-chip");
  chip.dataset.suggestionId = suggestion.id;
  chip.dataset.state = suggestion.state;
  if (suggestion.content.kind === "text") {
    chip.appendChild(el("span", "suggestion-text", suggestion.content.text ?? ""));
  } else {
    const img = el("img", "suggestion-image");
    if (suggestion.content.image_hash) {
      img.src = handlers.imageUrl(suggestion.content.image_hash);
    }
    img.title = suggestion.content.prompt ?? "";
    chip.appendChild(img);
  }
  if (suggestion.state === "bookmarked") chip.classList.add("bookmarked");
  if (!handlers.readOnly) {
    const actions = el("span", "chip-actions");
    const buttons: [string, string, string][] = [
      ["delete", "x", "delete"],
      ["similar", "≈", "more like this"],
      ["distant", "≉", "something different"],
      ["bookmark", "☆", "bookmark"],
    ];
    for (const [mode, label, title] of buttons) {
      const button = el("button", `chip-btn chip-${mode}`, label);
      button.title = title;
      button.onclick = (event) => {
        event.stopPropagation();
        handlers.onRefine(block.id, mode, suggestion.id);
      };
      actions.appendChild(button);
    }
    chip.appendChild(actions);
  }
  return chip;
}

function blockNode(view: SessionView, block: Block, handlers: CanvasHandlers): HTMLElement {
  const node = el("div", "block-node");
  node.dataset.blockId = block.id;
  node.dataset.nodeKind = "block";

  const header = el("div", "block-header");
  header.appendChild(el("span", "property-badge", block.property));
  if (block.reuse_origin) {
    header.appendChild(el("span", "reuse-badge", block.reuse_origin.mode.replace("_", " ")));
  }
  node.appendChild(header);
  node.appendChild(el("div", "block-direction", block.direction));

  const slider = el("div", "typicality-slider");
  slider.appendChild(el("span", "slider-label", "typical"));
  const steps = el("span", "slider-steps");
  for (let level = 1; level <= 5; level += 1) {
    const dot = el("span", level === block.typicality ? "step active" : "step");
    dot.dataset.level = String(level);
    steps.appendChild(dot);
  }
  slider.appendChild(steps);
  slider.appendChild(el("span", "slider-label", "atypical"));
  node.appendChild(slider);

  const chips = el("div", "suggestions");
  for (const suggestion of block.suggestions) {
    if (suggestion.state === "deleted") continue;
    chips.appendChild(suggestionChip(block, suggestion, handlers));
  }
  node.appendChild(chips);

  if (!handlers.readOnly) {
    const toolbar = el("div", "block-toolbar");
    const more = el("button", "node-btn more-btn", "+ more");
    more.onclick = () => handlers.onRefine(block.id, "more");
    const generate = el("button", "node-btn generate-btn", "generate images");
    generate.onclick = () => handlers.onRealize(block.id);
    const chain = el("button", "node-btn chain-btn", "chain from here");
    chain.onclick = () => handlers.onChainFrom(block.id);
    const copyPath = el("button", "node-btn copy-path-btn", "copy path");
    copyPath.onclick = () => handlers.onCopyPathTo(block.id);
    toolbar.append(more, generate, chain, copyPath);
    node.appendChild(toolbar);
  }
  return node;
}

function resultNode(view: SessionView, blockId: string, handlers: CanvasHandlers): HTMLElement | null {
  const latest = view.latestResult(blockId);
  if (!latest) return null;
  const node = el("div", "result-node");
  node.dataset.resultId = latest.id;
  node.dataset.nodeKind = "result";
  node.dataset.parentBlockId = blockId;
  const grid = el("div", "result-grid");
  for (const item of latest.items) {
    const cell = el("div", "result-cell");
    if (item.image_hash) {
      const img = el("img", "result-image");
      img.src = handlers.imageUrl(item.image_hash);
      img.title = item.final_prompt;
      cell.appendChild(img);
    } else {
      cell.appendChild(el("span", "result-error", item.error ?? "failed"));
    }
    grid.appendChild(cell);
  }
  node.appendChild(grid);
  return node;
}

function edgeLine(from: NodePosition, to: NodePosition): SVGLineElement {
  const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
  line.setAttribute("x1", String(from.x + NODE_W));
  line.setAttribute("y1", String(from.y + NODE_H / 2));
  line.setAttribute("x2", String(to.x));
  line.setAttribute("y2", String(to.y + NODE_H / 2));
  line.setAttribute("class", "edge");
  return line;
}

export function renderCanvas(
  container: HTMLElement,
  view: SessionView,
  layout: Layout,
  handlers: CanvasHandlers,
): void {
  container.textContent = "";
  container.classList.add("canvas");

  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("class", "edge-layer");
  container.appendChild(svg);

  const positions: Layout = {};
  for (const block of view.blocksInOrder()) {
    positions[block.id] = layout[block.id] ?? defaultLayout(view)[block.id] ?? { x: 40, y: 40 };
  }

  for (const block of view.blocksInOrder()) {
    const pos = positions[block.id]!;
    const node = blockNode(view, block, handlers);
    node.style.left = `${pos.x}px`;
    node.style.top = `${pos.y}px`;
    container.appendChild(node);

    const results = resultNode(view, block.id, handlers);
    if (results) {
      const rpos = { x: pos.x + 10, y: pos.y + NODE_H + 12 };
      results.style.left = `${rpos.x}px`;
      results.style.top = `${rpos.y}px`;
      container.appendChild(results);
      svg.appendChild(edgeLine({ x: pos.x - NODE_W + 30, y: rpos.y }, { x: rpos.x, y: rpos.y }));
    }
  }

  for (const [parent, child] of view.snapshot.edges) {
    const from = positions[parent];
    const to = positions[child];
    if (from && to) svg.appendChild(edgeLine(from, to));
  }
}
