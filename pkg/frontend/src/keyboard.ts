/** Keyboard shortcuts: single keys for the construction actions, arrows for
 * slice navigation.  Keys that need a name (new cells, theorems) resolve to
 * prompts; the app supplies the name and issues the action.
 */

import type { Action } from "./actions.js";

export type UiIntent =
  | { kind: "action"; action: Action }
  | { kind: "prompt"; prompt: "add-zero-cell" | "set-target" | "theorem" }
  | { kind: "descend" }
  | { kind: "ascend" }
  | { kind: "highlight"; delta: 1 | -1 }
  | { kind: "notice"; message: string };

export interface KeyContext {
  hasCurrent: boolean;
  currentDimension: number | null;
}

export function keyToIntent(key: string, ctx: KeyContext): UiIntent | null {
  switch (key.length === 1 ? key.toLowerCase() : key) {
    case "a":
      return { kind: "prompt", prompt: "add-zero-cell" };
    case "s":
      if (!ctx.hasCurrent) {
        return { kind: "notice", message: "select a diagram first" };
      }
      return { kind: "action", action: { type: "SetSource" } };
    case "t":
      if (!ctx.hasCurrent) {
        return { kind: "notice", message: "select a diagram first" };
      }
      return { kind: "prompt", prompt: "set-target" };
    case "i":
      if (!ctx.hasCurrent) {
        return { kind: "notice", message: "select a diagram first" };
      }
      return { kind: "action", action: { type: "Identity" } };
    case "h":
      if (!ctx.hasCurrent || (ctx.currentDimension ?? 0) < 2) {
        return {
          kind: "notice",
          message: "a theorem needs a diagram of dimension at least 2",
        };
      }
      return { kind: "prompt", prompt: "theorem" };
    case "ArrowRight":
      return { kind: "descend" };
    case "ArrowLeft":
      return { kind: "ascend" };
    case "ArrowDown":
      return { kind: "highlight", delta: 1 };
    case "ArrowUp":
      return { kind: "highlight", delta: -1 };
    default:
      return null;
  }
}
