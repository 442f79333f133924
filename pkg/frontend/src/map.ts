import type { GeoPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 600;
const HEIGHT = 400;
const PAD = 40;

export interface Projected {
  x: number;
  y: number;
  point: GeoPoint;
}

/**
 * Plain equirectangular projection onto the drawing area: x follows
 * longitude, y follows latitude (flipped, north up), scaled to the
 * bounding box of the points. A single point lands in the middle.
 */
export function project(points: GeoPoint[]): Projected[] {
  if (points.length === 0) return [];
  const lats = points.map((p) => p.lat);
  const lngs = points.map((p) => p.lng);
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLng = Math.min(...lngs);
  const maxLng = Math.max(...lngs);
  const spanLat = maxLat - minLat || 1;
  const spanLng = maxLng - minLng || 1;
  const scale = Math.min(
    (WIDTH - 2 * PAD) / spanLng,
    (HEIGHT - 2 * PAD) / spanLat,
  );
  const cx = (minLng + maxLng) / 2;
  const cy = (minLat + maxLat) / 2;
  return points.map((point) => ({
    x: WIDTH / 2 + (point.lng - cx) * scale,
    y: HEIGHT / 2 - (point.lat - cy) * scale,
    point,
  }));
}

/**
 * Scatter map with wheel zoom and drag pan (viewBox manipulation only, no
 * tile service). Returns the marker elements keyed by node id.
 */
export function renderMap(
  container: HTMLElement,
  points: GeoPoint[],
  onSelect: (nodeId: string) => void,
): Map<string, Element> {
  const doc = container.ownerDocument;
  container.textContent = "";
  const markers = new Map<string, Element>();
  if (points.length === 0) {
    container.hidden = true;
    return markers;
  }
  container.hidden = false;

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "geo-map");
  svg.setAttribute("width", String(WIDTH));
  svg.setAttribute("height", String(HEIGHT));
  const view = { x: 0, y: 0, w: WIDTH, h: HEIGHT };
  const applyView = () =>
    svg.setAttribute("viewBox", `${view.x} ${view.y} ${view.w} ${view.h}`);
  applyView();

  const frame = doc.createElementNS(SVG_NS, "rect");
  frame.setAttribute("x", "1");
  frame.setAttribute("y", "1");
  frame.setAttribute("width", String(WIDTH - 2));
  frame.setAttribute("height", String(HEIGHT - 2));
  frame.setAttribute("class", "map-frame");
  svg.appendChild(frame);

  for (const { x, y, point } of project(points)) {
    const marker = doc.createElementNS(SVG_NS, "circle");
    marker.setAttribute("class", "marker");
    marker.setAttribute("cx", x.toFixed(2));
    marker.setAttribute("cy", y.toFixed(2));
    marker.setAttribute("r", "6");
    marker.setAttribute("data-node-id", point.id);
    marker.addEventListener("click", () => onSelect(point.id));
    svg.appendChild(marker);

    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("class", "marker-label");
    label.setAttribute("x", (x + 9).toFixed(2));
    label.setAttribute("y", (y + 4).toFixed(2));
    label.textContent = point.label;
    svg.appendChild(label);
    markers.set(point.id, marker);
  }

  svg.addEventListener("wheel", (event) => {
    event.preventDefault();
    const factor = (event as WheelEvent).deltaY > 0 ? 1.2 : 1 / 1.2;
    const nw = Math.min(Math.max(view.w * factor, WIDTH / 16), WIDTH * 4);
    const nh = (nw / WIDTH) * HEIGHT;
    view.x += (view.w - nw) / 2;
    view.y += (view.h - nh) / 2;
    view.w = nw;
    view.h = nh;
    applyView();
  });

  let dragging: { px: number; py: number } | null = null;
  svg.addEventListener("pointerdown", (event) => {
    dragging = { px: (event as PointerEvent).clientX, py: (event as PointerEvent).clientY };
  });
  svg.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    const e = event as PointerEvent;
    const scale = view.w / WIDTH;
    view.x -= (e.clientX - dragging.px) * scale;
    view.y -= (e.clientY - dragging.py) * scale;
    dragging = { px: e.clientX, py: e.clientY };
    applyView();
  });
  svg.addEventListener("pointerup", () => {
    dragging = null;
  });

  container.appendChild(svg);
  return markers;
}
