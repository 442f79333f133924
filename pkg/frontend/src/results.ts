import type { ExecuteResponse, NodePayload } from "./types.js";

function localName(iri: string): string {
  const cut = Math.max(iri.lastIndexOf("#"), iri.lastIndexOf("/"),
    iri.lastIndexOf(":"));
  return cut >= 0 ? iri.slice(cut + 1) : iri;
}

function literalRows(doc: Document, node: NodePayload): HTMLElement {
  const dl = doc.createElement("dl");
  dl.className = "literals";
  for (const prop of Object.keys(node.literals).sort()) {
    for (const value of node.literals[prop]) {
      const dt = doc.createElement("dt");
      dt.textContent = localName(prop);
      const dd = doc.createElement("dd");
      dd.textContent = value;
      dl.appendChild(dt);
      dl.appendChild(dd);
    }
  }
  return dl;
}

function nodeCard(
  doc: Document,
  node: NodePayload,
  byId: Map<string, NodePayload>,
  depth: number,
): HTMLElement {
  const card = doc.createElement("div");
  card.className = "node-card";
  card.dataset.nodeId = node.id;

  const heading = doc.createElement("span");
  heading.className = "node-type";
  heading.textContent = node.typeLabel ?? (node.type ? localName(node.type) : "thing");
  card.appendChild(heading);
  card.appendChild(literalRows(doc, node));

  if (depth < 4) {
    for (const link of node.links) {
      const target = byId.get(link.targetId);
      const details = doc.createElement("details");
      details.className = "node-link";
      const summary = doc.createElement("summary");
      summary.textContent = localName(link.predicate);
      details.appendChild(summary);
      if (target) {
        details.appendChild(nodeCard(doc, target, byId, depth + 1));
      } else {
        const missing = doc.createElement("span");
        missing.textContent = link.targetId;
        details.appendChild(missing);
      }
      card.appendChild(details);
    }
  }
  return card;
}

/** One list row per result root, literals inline, linked nodes expandable. */
export function renderResults(
  container: HTMLElement,
  response: ExecuteResponse,
): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  const byId = new Map(response.nodes.map((n) => [n.id, n]));
  const list = doc.createElement("ol");
  list.className = "result-list";
  for (const rootId of response.roots) {
    const row = doc.createElement("li");
    row.className = "result-row";
    row.dataset.nodeId = rootId;
    const node = byId.get(rootId);
    if (node) {
      row.appendChild(nodeCard(doc, node, byId, 0));
    } else {
      row.textContent = rootId;
    }
    list.appendChild(row);
  }
  container.appendChild(list);
}

export function highlightRow(container: HTMLElement, nodeId: string): void {
  for (const row of Array.from(
    container.querySelectorAll<HTMLElement>(".result-row"),
  )) {
    row.classList.toggle("selected", row.dataset.nodeId === nodeId);
  }
}
