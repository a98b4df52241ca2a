/** View paths: the star-prefixed selector string plus a projection dimension.
 *
 * A selector is one of S (source slice), T (target slice), R<i> (regular
 * level i), s<i> (singular level i).  The path addresses a slice of the
 * current diagram; `dims` says how many axes of that slice are drawn.
 */

export interface ViewPath {
  selectors: string[];
  dims: number;
}

const TOKEN = /^(S|T|R\d+|s\d+)/;

export function parseViewPath(text: string): string[] {
  if (!text.startsWith("*")) {
    throw new Error(`view path ${JSON.stringify(text)} must start with *`);
  }
  let rest = text.slice(1);
  const selectors: string[] = [];
  while (rest.length > 0) {
    const m = TOKEN.exec(rest);
    if (!m) {
      throw new Error(`bad view selector at ${JSON.stringify(rest)}`);
    }
    selectors.push(m[1]);
    rest = rest.slice(m[1].length);
  }
  return selectors;
}

export function formatViewPath(view: ViewPath): string {
  return "*" + view.selectors.join("");
}

/** Default projection: draw at most two axes. */
export function defaultDims(sliceDimension: number): number {
  return Math.min(sliceDimension, 2);
}

/** Dimension of the slice a view addresses; every selector drops one. */
export function sliceDimension(
  diagramDimension: number,
  selectors: string[],
): number {
  return diagramDimension - selectors.length;
}

/** The V/P buttons move `dims` by one, clamped to [0, 4] and to the slice. */
export function clampDims(dims: number, sliceDim: number): number {
  return Math.max(0, Math.min(dims, Math.min(sliceDim, 4)));
}

export function viewAfterDescend(
  view: ViewPath,
  selector: string,
  diagramDimension: number,
): ViewPath {
  const selectors = [...view.selectors, selector];
  const slice = sliceDimension(diagramDimension, selectors);
  if (slice < 0) {
    throw new Error("already at a point; nothing to descend into");
  }
  return { selectors, dims: defaultDims(slice) };
}

export function viewAfterAscend(
  view: ViewPath,
  diagramDimension: number,
): ViewPath {
  if (view.selectors.length === 0) {
    throw new Error("already at the top view");
  }
  const selectors = view.selectors.slice(0, -1);
  return {
    selectors,
    dims: defaultDims(sliceDimension(diagramDimension, selectors)),
  };
}

/** Selector choices the highlight cycles through for a slice of `heights`
 * singular levels: boundaries first, then the level ladder. */
export function highlightOptions(heights: number): string[] {
  const out = ["S", "T"];
  for (let i = 0; i <= heights; i++) {
    out.push(`R${i}`);
    if (i < heights) out.push(`s${i}`);
  }
  return out;
}
