/** Drag gestures: the pixel-threshold state machine turning pointer paths
 * into Contract/Expand actions.
 *
 * Thresholds are in diagram units (one regular-to-singular step is 1.0).
 * A drag must be vertical-dominant to count as a homotopy; the horizontal
 * lean of a contracting drag picks the bias.  A drag resolves to exactly
 * one action or to a cancellation with a reason.
 */

import type { Bias, Direction } from "./actions.js";
import {
  Hit,
  Point,
  SceneElements,
  levelAt,
  verticesAtLevel,
  viewedHeights,
} from "./scene.js";

export const DRAG_MIN = 0.6;
export const BIAS_MIN = 0.35;
export const CLICK_MAX = 0.25;

export interface DragState {
  origin: Point;
  originHit: Hit;
  current: Point;
}

export type DragResolution =
  | { kind: "contract"; lo: number; hi: number; bias: Bias }
  | { kind: "expand"; height: number; split: number; direction: Direction }
  | { kind: "click" }
  | { kind: "none"; reason: string };

function biasOf(dx: number): Bias {
  if (dx > BIAS_MIN) return "right";
  if (dx < -BIAS_MIN) return "left";
  return null;
}

export function resolveDrag(
  drag: DragState,
  elements: SceneElements,
): DragResolution {
  const dx = drag.current[0] - drag.origin[0];
  const dy = drag.current[1] - drag.origin[1];
  if (Math.hypot(dx, dy) <= CLICK_MAX) {
    return { kind: "click" };
  }
  if (Math.abs(dy) < DRAG_MIN || Math.abs(dy) < Math.abs(dx)) {
    return { kind: "none", reason: "homotopy drags move vertically" };
  }
  const heights = viewedHeights(elements);
  if (heights === 0) {
    return { kind: "none", reason: "nothing to rearrange here" };
  }
  const origin = drag.originHit;
  const level =
    origin.kind === "vertex"
      ? origin.level
      : levelAt(drag.origin[1], heights);
  if (level === null) {
    return { kind: "none", reason: "nothing to rearrange here" };
  }
  const toward = level + (dy > 0 ? 1 : -1);
  if (toward >= 0 && toward < heights) {
    const lo = Math.min(level, toward);
    return { kind: "contract", lo, hi: lo + 2, bias: biasOf(dx) };
  }
  // dragged past the end of the ladder: pull the level apart instead
  if (origin.kind !== "vertex") {
    return { kind: "none", reason: "expansion drags start on a vertex" };
  }
  const peers = verticesAtLevel(elements, level);
  if (peers.length < 2) {
    return { kind: "none", reason: "nothing to split at this level" };
  }
  const split = peers.findIndex(({ index }) => index === origin.index);
  return {
    kind: "expand",
    height: level,
    split,
    direction: dy > 0 ? "up" : "down",
  };
}
