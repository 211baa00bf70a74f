// Left panel: property list and the per-property history trees. Clicking a
// stored block reuses it (a server-side copy with its settings preserved).

import { el } from "./canvas.js";
import type { SessionView } from "./store.js";
import type { Block } from "./types.js";

export interface SidebarHandlers {
  onCopyBlock(sourceBlockId: string): void;
  readOnly: boolean;
}

interface TreeNode {
  block: Block;
  children: TreeNode[];
}

/** Indented tree per property from the stored evolution-parent links. */
export function evolutionTree(view: SessionView, property: string): TreeNode[] {
  const blocks = view.propertyBlocks(property);
  const nodes = new Map<string, TreeNode>();
  for (const block of blocks) nodes.set(block.id, { block, children: [] });
  const roots: TreeNode[] = [];
  for (const block of blocks) {
    const node = nodes.get(block.id)!;
    const parent = block.evolution_parent_id ? nodes.get(block.evolution_parent_id) : undefined;
    if (parent) parent.children.push(node);
    else roots.push(node);
  }
  return roots;
}

function renderTree(
  list: HTMLElement,
  nodes: TreeNode[],
  depth: number,
  handlers: SidebarHandlers,
): void {
  for (const node of nodes) {
    const item = el("li", "history-item");
    item.style.paddingLeft = `${depth * 14}px`;
    item.dataset.blockId = node.block.id;
    const label = el(
      "button",
      "history-block",
      `${node.block.direction} · ${node.block.typicality}`,
    );
    label.title = "place a copy on the canvas";
    label.disabled = handlers.readOnly;
    label.onclick = () => handlers.onCopyBlock(node.block.id);
    item.appendChild(label);
    list.appendChild(item);
    renderTree(list, node.children, depth + 1, handlers);
  }
}

export function renderSidebar(
  container: HTMLElement,
  view: SessionView,
  handlers: SidebarHandlers,
): void {
  container.textContent = "";
  container.classList.add("sidebar");
  container.appendChild(el("h2", "sidebar-title", view.snapshot.topic));

  for (const property of view.snapshot.properties) {
    const section = el("section", "property-section");
    section.dataset.property = property.name;
    const head = el("h3", "property-name", property.name);
    head.appendChild(el("span", `kind-badge kind-${property.kind}`, property.kind));
    section.appendChild(head);
    const tree = evolutionTree(view, property.name);
    if (tree.length > 0) {
      const list = el("ul", "history-tree");
      renderTree(list, tree, 0, handlers);
      section.appendChild(list);
    }
    container.appendChild(section);
  }
}
