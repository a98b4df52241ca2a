/** Thin browser binding.  Everything interesting lives in WorkspaceApp;
 * this file only converts DOM events to raw scene coordinates, repaints
 * the app state, and wires the buttons.
 */

import { WorkspaceApp } from "./app.js";
import { CoreClient, HttpTransport } from "./client.js";
import type { Point } from "./scene.js";

/** Pixels per scene unit, fixed by the core's SVG output. */
const SCALE = 40;

function el(tag: string, cls: string, parent: HTMLElement): HTMLElement {
  const node = document.createElement(tag);
  node.className = cls;
  parent.appendChild(node);
  return node;
}

export function mount(root: HTMLElement, base = ""): WorkspaceApp {
  const client = new CoreClient(new HttpTransport(base));
  const app = new WorkspaceApp(client, (purpose) =>
    window.prompt(`name for ${purpose}`) ?? "",
  );

  root.classList.add("zz-root");
  const toolbar = el("div", "zz-toolbar", root);
  const body = el("div", "zz-body", root);
  const sidebar = el("div", "zz-sidebar", body);
  const stage = el("div", "zz-stage", body);
  const canvas = el("div", "zz-canvas", stage);
  const menuBox = el("div", "zz-menu", stage);
  const noticeBox = el("div", "zz-notice", root);

  function button(label: string, onClick: () => Promise<void>): void {
    const b = el("button", "zz-button", toolbar) as HTMLButtonElement;
    b.textContent = label;
    b.addEventListener("click", () => void onClick().then(paint));
  }
  button("undo", () => app.undo());
  button("redo", () => app.redo());
  button("dims +", () => app.viewButton("V"));
  button("dims -", () => app.viewButton("P"));
  button("save", async () => {
    const log = await app.saveSession();
    const blob = new Blob([log], { type: "text/plain" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "session.log";
    a.click();
    URL.revokeObjectURL(a.href);
  });

  function paint(): void {
    canvas.innerHTML = app.scene?.svg ?? "";
    const view = app.scene ? `view ${app.scene.view} / ${app.scene.dims}` : "";
    noticeBox.textContent = app.notice ?? view;

    sidebar.innerHTML = "";
    for (const entry of app.signature) {
      const row = el("div", "zz-cell", sidebar);
      row.textContent = `${entry.name} (${entry.dimension})`;
      row.style.borderLeft = `6px solid ${entry.color}`;
      row.addEventListener("click", () =>
        void app.clickSignature(entry.id).then(paint),
      );
    }

    menuBox.innerHTML = "";
    menuBox.style.display = app.menu ? "block" : "none";
    (app.menu ?? []).forEach((item, i) => {
      const b = el("button", "zz-menu-item", menuBox) as HTMLButtonElement;
      b.textContent = item.label;
      b.addEventListener("click", () => void app.choose(i).then(paint));
    });
  }

  function rawPoint(ev: PointerEvent): Point | null {
    const svg = canvas.querySelector("svg");
    const box = app.scene?.elements?.box;
    if (!svg || !box) return null;
    const rect = svg.getBoundingClientRect();
    const px = ev.clientX - rect.left;
    const py = ev.clientY - rect.top;
    return [px / SCALE + box[0], box[3] - py / SCALE];
  }

  canvas.addEventListener("pointerdown", (ev) => {
    const p = rawPoint(ev);
    if (p) app.pointerDown(p);
  });
  canvas.addEventListener("pointermove", (ev) => {
    const p = rawPoint(ev);
    if (p) app.pointerMove(p);
  });
  canvas.addEventListener("pointerup", (ev) => {
    const p = rawPoint(ev);
    if (p) void app.pointerUp(p).then(paint);
  });

  window.addEventListener("keydown", (ev) => {
    if (ev.target instanceof HTMLInputElement) return;
    void app.key(ev.key).then(paint);
  });

  void app.start().then(paint);
  return app;
}
