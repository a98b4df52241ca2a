/** The workspace controller: pointer and keyboard events in, actions out.
 *
 * The controller owns no diagram state.  Its whole state is the last scene
 * response, the signature listing, the pending gesture, and transient UI
 * chrome (menu, notice, highlight).  Every mutation is an action sent to
 * the core; every displayed picture came back from it.  Requests are
 * serialized: gestures queue behind the in-flight response.
 */

import type { Action, Boundary } from "./actions.js";
import {
  CoreClient,
  CoreError,
  SceneResponse,
  SignatureEntry,
} from "./client.js";
import { DragState, resolveDrag } from "./gestures.js";
import { Hit, Point, hitTest, viewedHeights } from "./scene.js";
import { keyToIntent } from "./keyboard.js";
import {
  ViewPath,
  clampDims,
  highlightOptions,
  parseViewPath,
  sliceDimension,
  viewAfterAscend,
  viewAfterDescend,
} from "./viewPath.js";

export interface MenuItem {
  label: string;
  action: Action;
}

/** Supplies names for prompts (new cells, theorems). */
export type Namer = (purpose: string) => string;

export class WorkspaceApp {
  scene: SceneResponse | null = null;
  signature: SignatureEntry[] = [];
  menu: MenuItem[] | null = null;
  notice: string | null = null;
  highlight = 0;
  private drag: DragState | null = null;
  private queue: Promise<unknown> = Promise.resolve();

  constructor(
    private client: CoreClient,
    private namer: Namer = () => "",
  ) {}

  private enqueue<T>(fn: () => Promise<T>): Promise<T> {
    const run = this.queue.then(fn, fn);
    this.queue = run.then(
      () => undefined,
      () => undefined,
    );
    return run;
  }

  start(): Promise<void> {
    return this.enqueue(() => this.refresh());
  }

  private async refresh(scene?: SceneResponse): Promise<void> {
    this.scene = scene ?? (await this.client.scene());
    this.signature = await this.client.signature();
  }

  private async issue(action: Action): Promise<void> {
    this.notice = null;
    try {
      const scene = await this.client.act(action);
      await this.refresh(scene);
    } catch (e) {
      if (e instanceof CoreError) {
        this.notice = e.message;
        return;
      }
      throw e;
    }
  }

  private currentView(): ViewPath {
    if (!this.scene) return { selectors: [], dims: 0 };
    return {
      selectors: parseViewPath(this.scene.view),
      dims: this.scene.dims,
    };
  }

  /** Homotopy drags act on the displayed diagram ("*") or, when the target
   * slice is displayed, extend the movie ("T").  Other views reject. */
  private homotopyPath(): string | null {
    const selectors = this.currentView().selectors;
    if (selectors.length === 0) return "*";
    if (selectors.length === 1 && selectors[0] === "T") return "T";
    return null;
  }

  highlightChoices(): string[] {
    const heights = this.scene?.elements
      ? viewedHeights(this.scene.elements)
      : 0;
    return highlightOptions(heights);
  }

  key(k: string): Promise<void> {
    return this.enqueue(async () => {
      const intent = keyToIntent(k, {
        hasCurrent: this.scene?.diagram_dimension != null,
        currentDimension: this.scene?.diagram_dimension ?? null,
      });
      if (!intent) return;
      switch (intent.kind) {
        case "action":
          await this.issue(intent.action);
          return;
        case "notice":
          this.notice = intent.message;
          return;
        case "prompt": {
          const name = this.namer(intent.prompt);
          if (!name) {
            this.notice = "a name is needed";
            return;
          }
          if (intent.prompt === "add-zero-cell") {
            await this.issue({ type: "AddZeroCell", name });
          } else if (intent.prompt === "set-target") {
            await this.issue({ type: "SetTarget", name });
          } else {
            await this.issue({ type: "Theorem", name });
          }
          return;
        }
        case "highlight": {
          const max = this.highlightChoices().length - 1;
          this.highlight = Math.max(
            0,
            Math.min(max, this.highlight + intent.delta),
          );
          return;
        }
        case "descend": {
          const selector = this.highlightChoices()[this.highlight];
          await this.descendInto(selector);
          return;
        }
        case "ascend": {
          const dim = this.scene?.diagram_dimension;
          if (dim == null) {
            this.notice = "nothing is displayed";
            return;
          }
          try {
            const next = viewAfterAscend(this.currentView(), dim);
            await this.issue({
              type: "ViewChange",
              selectors: next.selectors,
              dims: next.dims,
            });
            this.highlight = 0;
          } catch (e) {
            this.notice = e instanceof Error ? e.message : String(e);
          }
          return;
        }
      }
    });
  }

  /** Chevron click: descend into an explicit slice. */
  chevron(selector: string): Promise<void> {
    return this.enqueue(() => this.descendInto(selector));
  }

  private async descendInto(selector: string): Promise<void> {
    const dim = this.scene?.diagram_dimension;
    if (dim == null) {
      this.notice = "nothing is displayed";
      return;
    }
    try {
      const next = viewAfterDescend(this.currentView(), selector, dim);
      await this.issue({
        type: "ViewChange",
        selectors: next.selectors,
        dims: next.dims,
      });
      this.highlight = 0;
    } catch (e) {
      this.notice = e instanceof Error ? e.message : String(e);
    }
  }

  pointerDown(p: Point): void {
    if (!this.scene?.elements) return;
    this.drag = {
      origin: p,
      originHit: hitTest(this.scene.elements, p),
      current: p,
    };
  }

  pointerMove(p: Point): void {
    if (this.drag) this.drag.current = p;
  }

  pointerUp(p: Point): Promise<void> {
    return this.enqueue(async () => {
      const drag = this.drag;
      this.drag = null;
      const elements = this.scene?.elements;
      if (!drag || !elements) return;
      drag.current = p;
      const res = resolveDrag(drag, elements);
      if (res.kind === "click") {
        await this.click(drag.originHit, drag.origin);
        return;
      }
      if (res.kind === "none") {
        this.notice = res.reason;
        return;
      }
      const path = this.homotopyPath();
      if (path === null) {
        this.notice = "homotopies apply at the top view or on the target slice";
        return;
      }
      if (res.kind === "contract") {
        await this.issue({
          type: "Contract",
          path,
          lo: res.lo,
          hi: res.hi,
          bias: res.bias,
        });
      } else {
        await this.issue({
          type: "Expand",
          path,
          height: res.height,
          split: res.split,
          direction: res.direction,
        });
      }
    });
  }

  private async click(hit: Hit, p: Point): Promise<void> {
    this.menu = null;
    if (hit.kind === "none") return;
    if (hit.kind === "boundary") {
      await this.openAttachMenu(hit.boundary);
      return;
    }
    // interior click: offer attachments on the nearest vertical boundary
    const box = this.scene!.elements!.box;
    const boundary: Boundary = p[1] >= (box[2] + box[3]) / 2 ? "target" : "source";
    await this.openAttachMenu(boundary);
  }

  private async openAttachMenu(boundary: Boundary): Promise<void> {
    try {
      const items = await this.client.attachments(boundary);
      const menu = items.flatMap((it) =>
        it.offsets.map((offset) => ({
          label: `${it.name} @ ${offset}`,
          action: {
            type: "Attach",
            id: it.id,
            boundary,
            offset,
          } as Action,
        })),
      );
      if (menu.length === 0) {
        this.notice = `nothing attaches to the ${boundary} here`;
        return;
      }
      this.menu = menu;
    } catch (e) {
      if (e instanceof CoreError) {
        this.notice = e.message;
        return;
      }
      throw e;
    }
  }

  choose(index: number): Promise<void> {
    return this.enqueue(async () => {
      const item = this.menu?.[index];
      this.menu = null;
      if (item) await this.issue(item.action);
    });
  }

  chooseByLabel(prefix: string): Promise<void> {
    return this.enqueue(async () => {
      const item = this.menu?.find((m) => m.label.startsWith(prefix));
      this.menu = null;
      if (!item) {
        this.notice = `no menu entry for ${prefix}`;
        return;
      }
      await this.issue(item.action);
    });
  }

  clickSignature(id: number): Promise<void> {
    return this.enqueue(() => this.issue({ type: "Select", id }));
  }

  viewButton(which: "V" | "P"): Promise<void> {
    return this.enqueue(async () => {
      const dim = this.scene?.diagram_dimension;
      if (dim == null) {
        this.notice = "nothing is displayed";
        return;
      }
      const view = this.currentView();
      const slice = sliceDimension(dim, view.selectors);
      const dims = clampDims(view.dims + (which === "V" ? 1 : -1), slice);
      if (dims === view.dims) {
        this.notice = "the view dimension is already at its limit";
        return;
      }
      await this.issue({
        type: "ViewChange",
        selectors: view.selectors,
        dims,
      });
    });
  }

  undo(): Promise<void> {
    return this.enqueue(async () => {
      try {
        await this.refresh(await this.client.undo());
        this.notice = null;
      } catch (e) {
        if (e instanceof CoreError) this.notice = e.message;
        else throw e;
      }
    });
  }

  redo(): Promise<void> {
    return this.enqueue(async () => {
      try {
        await this.refresh(await this.client.redo());
        this.notice = null;
      } catch (e) {
        if (e instanceof CoreError) this.notice = e.message;
        else throw e;
      }
    });
  }

  saveSession(): Promise<string> {
    return this.enqueue(() => this.client.session());
  }

  restoreSession(log: string): Promise<void> {
    return this.enqueue(async () => {
      const scene = await this.client.loadSession(log);
      await this.refresh(scene);
    });
  }

  finalSvg(): string | null {
    return this.scene?.svg ?? null;
  }
}
