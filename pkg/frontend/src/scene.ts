/** Scene payloads and client-side hit testing.
 *
 * The core's scene response carries the SVG text plus a raw element table
 * (regions, wires, vertices) in diagram units: x is the horizontal layout
 * axis, y is the height axis with singular level i centered on y = 2i + 1.
 * Hit testing runs against that table, so clicks resolve to diagram
 * coordinates without any geometry knowledge leaking into the UI.
 */

export interface GeneratorRef {
  dimension: number;
  id: number;
}

export interface RegionElement {
  points: number[][];
  generator: GeneratorRef;
}

export interface WireElement {
  points: number[][];
  generator: GeneratorRef;
}

export interface VertexElement {
  point: number[];
  generator: GeneratorRef;
}

export interface SceneElements {
  box: number[]; // x_lo, x_hi, y_lo, y_hi
  regions: RegionElement[];
  wires: WireElement[];
  vertices: VertexElement[];
}

export type Point = [number, number];

export type Hit =
  | {
      kind: "vertex";
      index: number;
      level: number;
      point: Point;
      generator: GeneratorRef;
    }
  | { kind: "wire"; index: number; generator: GeneratorRef }
  | { kind: "boundary"; boundary: "source" | "target" }
  | { kind: "region"; index: number; generator: GeneratorRef }
  | { kind: "none" };

export const VERTEX_RADIUS = 0.45;
export const WIRE_TOLERANCE = 0.3;
export const EDGE_TOLERANCE = 0.35;

function dist(a: Point, b: Point): number {
  return Math.hypot(a[0] - b[0], a[1] - b[1]);
}

function segmentDistance(p: Point, a: number[], b: number[]): number {
  const vx = b[0] - a[0];
  const vy = b[1] - a[1];
  const len2 = vx * vx + vy * vy;
  let t = len2 === 0 ? 0 : ((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2;
  t = Math.max(0, Math.min(1, t));
  return Math.hypot(p[0] - (a[0] + t * vx), p[1] - (a[1] + t * vy));
}

function polylineDistance(p: Point, points: number[][]): number {
  let best = Infinity;
  for (let i = 0; i + 1 < points.length; i++) {
    best = Math.min(best, segmentDistance(p, points[i], points[i + 1]));
  }
  return best;
}

function insidePolygon(p: Point, points: number[][]): boolean {
  // even-odd ray cast; degenerate (repeated-corner) quads are fine
  let inside = false;
  for (let i = 0, j = points.length - 1; i < points.length; j = i++) {
    const [xi, yi] = points[i];
    const [xj, yj] = points[j];
    if (
      yi > p[1] !== yj > p[1] &&
      p[0] < ((xj - xi) * (p[1] - yi)) / (yj - yi) + xi
    ) {
      inside = !inside;
    }
  }
  return inside;
}

/** Singular level a height coordinate belongs to. */
export function levelAt(y: number, heights: number): number | null {
  if (heights <= 0) return null;
  const level = Math.round((y - 1) / 2);
  return Math.max(0, Math.min(heights - 1, level));
}

export function vertexLevel(v: VertexElement): number {
  return Math.round((v.point[1] - 1) / 2);
}

/** Number of singular levels in the viewed slice, from the scene box. */
export function viewedHeights(elements: SceneElements): number {
  const yLo = elements.box[2];
  const yHi = elements.box[3];
  if (yLo < 0) return 0; // degenerate box is padded around a single level
  return Math.round(yHi / 2);
}

/** Vertices sharing one singular level, sorted left to right. */
export function verticesAtLevel(
  elements: SceneElements,
  level: number,
): { index: number; vertex: VertexElement }[] {
  return elements.vertices
    .map((vertex, index) => ({ index, vertex }))
    .filter(({ vertex }) => vertexLevel(vertex) === level)
    .sort((a, b) => a.vertex.point[0] - b.vertex.point[0]);
}

export function hitTest(elements: SceneElements, p: Point): Hit {
  const [xLo, xHi, yLo, yHi] = elements.box;
  let bestVertex = -1;
  let bestVertexDist = VERTEX_RADIUS;
  elements.vertices.forEach((v, i) => {
    const d = dist(p, [v.point[0], v.point[1]]);
    if (d <= bestVertexDist) {
      bestVertex = i;
      bestVertexDist = d;
    }
  });
  if (bestVertex >= 0) {
    const v = elements.vertices[bestVertex];
    return {
      kind: "vertex",
      index: bestVertex,
      level: vertexLevel(v),
      point: [v.point[0], v.point[1]],
      generator: v.generator,
    };
  }
  let bestWire = -1;
  let bestWireDist = WIRE_TOLERANCE;
  elements.wires.forEach((w, i) => {
    const d = polylineDistance(p, w.points);
    if (d <= bestWireDist) {
      bestWire = i;
      bestWireDist = d;
    }
  });
  if (bestWire >= 0) {
    return {
      kind: "wire",
      index: bestWire,
      generator: elements.wires[bestWire].generator,
    };
  }
  if (p[0] >= xLo - EDGE_TOLERANCE && p[0] <= xHi + EDGE_TOLERANCE) {
    if (Math.abs(p[1] - yLo) <= EDGE_TOLERANCE) {
      return { kind: "boundary", boundary: "source" };
    }
    if (Math.abs(p[1] - yHi) <= EDGE_TOLERANCE) {
      return { kind: "boundary", boundary: "target" };
    }
  }
  for (let i = 0; i < elements.regions.length; i++) {
    if (insidePolygon(p, elements.regions[i].points)) {
      return {
        kind: "region",
        index: i,
        generator: elements.regions[i].generator,
      };
    }
  }
  return { kind: "none" };
}
