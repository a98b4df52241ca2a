/** End-to-end fidelity: a scripted pointer/keyboard session against a live
 * core service must leave an action log whose CLI replay renders the very
 * same SVG the UI displays.  The session walks the bundled scalar
 * commutativity tutorial: two scalar cells, the recorded contraction and
 * crossing expansion, then the top-view contraction that merges them.
 */

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { parseLog } from "../src/actions.js";
import { WorkspaceApp } from "../src/app.js";
import { CoreClient, HttpTransport } from "../src/client.js";
import { Point, verticesAtLevel } from "../src/scene.js";

const ROOT = fileURLToPath(new URL("../..", import.meta.url));
const GOLDEN_SVG = join(ROOT, "tests", "fixtures", "eckmann-hilton.svg");
const FIXTURE_LOG = join(ROOT, "tests", "fixtures", "eckmann-hilton");
const PORT = 8741;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let secondServer: ChildProcess | null = null;
let workdir: string;

function startServer(port: number): ChildProcess {
  return spawn(
    "python3",
    [
      "-m",
      "uvicorn",
      "zigzag.service:app",
      "--port",
      String(port),
      "--log-level",
      "warning",
    ],
    { cwd: ROOT, stdio: "ignore" },
  );
}

async function waitUp(base: string): Promise<void> {
  for (let i = 0; i < 150; i++) {
    try {
      const res = await fetch(`${base}/signature`);
      if (res.ok) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`core service at ${base} did not come up`);
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "zigzag-ui-"));
  server = startServer(PORT);
  await waitUp(BASE);
});

afterAll(() => {
  server?.kill();
  secondServer?.kill();
  rmSync(workdir, { recursive: true, force: true });
});

function elementsOf(app: WorkspaceApp) {
  const elements = app.scene?.elements;
  if (!elements) throw new Error("scene has no element table");
  return elements;
}

async function drag(app: WorkspaceApp, from: Point, to: Point): Promise<void> {
  app.pointerDown(from);
  app.pointerMove([(from[0] + to[0]) / 2, (from[1] + to[1]) / 2]);
  await app.pointerUp(to);
}

describe("tutorial session against a live core", () => {
  it("replays through the CLI to the displayed picture", async () => {
    const names = ["x", "alpha", "beta"];
    const app = new WorkspaceApp(
      new CoreClient(new HttpTransport(BASE)),
      () => names.shift() ?? "",
    );
    await app.start();

    // two scalar 2-cells on the point x
    await app.key("a"); // AddZeroCell x
    await app.key("i");
    await app.key("s");
    await app.clickSignature(1);
    await app.key("i");
    await app.key("t"); // SetTarget alpha
    await app.clickSignature(1);
    await app.key("i");
    await app.key("s");
    await app.clickSignature(1);
    await app.key("i");
    await app.key("t"); // SetTarget beta
    expect(app.notice).toBeNull();
    expect(app.signature.map((e) => e.name)).toEqual(["x", "alpha", "beta"]);

    // stack beta on top of alpha via the attachment menu
    await app.clickSignature(2);
    const box2 = elementsOf(app).box;
    const onTarget: Point = [(box2[0] + box2[1]) / 2, box2[3]];
    app.pointerDown(onTarget);
    await app.pointerUp(onTarget);
    expect(app.menu?.map((m) => m.label)).toEqual(["alpha @ 0", "beta @ 0"]);
    await app.chooseByLabel("beta");
    expect(app.scene?.singular_height).toBe(2);

    // start the movie and descend into its target slice
    await app.key("i");
    expect(app.scene?.diagram_dimension).toBe(3);
    expect(app.scene?.view).toBe("*");
    await app.key("ArrowDown"); // highlight T
    await app.key("ArrowRight");
    expect(app.scene?.view).toBe("*T");

    // pull beta down past alpha, leaning right: records the contraction
    const [high] = verticesAtLevel(elementsOf(app), 1);
    const [bx, by] = high.vertex.point;
    await drag(app, [bx, by], [bx + 0.6, by - 1.6]);
    expect(app.notice).toBeNull();
    expect(app.scene?.singular_height).toBe(1);

    // then split the merged level downwards: records the crossing
    const peers = verticesAtLevel(elementsOf(app), 0);
    expect(peers.length).toBe(2);
    const [rx, ry] = peers[1].vertex.point;
    await drag(app, [rx, ry], [rx, ry - 1.4]);
    expect(app.notice).toBeNull();
    expect(app.scene?.singular_height).toBe(2);

    // back to the top view; the whole movie contracts to one level
    await app.key("ArrowLeft");
    expect(app.scene?.view).toBe("*");
    const box3 = elementsOf(app).box;
    const mx = (box3[0] + box3[1]) / 2;
    await drag(app, [mx, 2.8], [mx, 1.2]);
    expect(app.notice).toBeNull();
    expect(app.scene?.diagram_dimension).toBe(3);
    expect(app.scene?.singular_height).toBe(1);

    // the displayed picture is the bundled golden scene
    const uiSvg = app.finalSvg();
    expect(uiSvg).not.toBeNull();
    const uiBytes = Buffer.from(uiSvg!, "utf8");
    expect(uiBytes.equals(readFileSync(GOLDEN_SVG))).toBe(true);

    // the UI's log is the tutorial log plus its one explicit descent
    const log = await app.saveSession();
    const actions = parseLog(log);
    const tutorial = parseLog(readFileSync(FIXTURE_LOG, "utf8"));
    expect(actions[15]).toEqual({
      type: "ViewChange",
      selectors: ["T"],
      dims: 2,
    });
    expect([...actions.slice(0, 15), ...actions.slice(16)]).toEqual(tutorial);

    // CLI replay of the UI's own log renders the identical bytes
    const logPath = join(workdir, "session.log");
    writeFileSync(logPath, log);
    const replayed = spawnSync(
      "python3",
      ["-m", "zigzag.cli", "export", logPath, "--format", "svg"],
      { cwd: ROOT },
    );
    expect(replayed.status).toBe(0);
    expect(replayed.stdout.equals(uiBytes)).toBe(true);

    // a fresh service fed the same log shows the same picture
    secondServer = startServer(PORT + 1);
    await waitUp(`http://127.0.0.1:${PORT + 1}`);
    const fresh = new WorkspaceApp(
      new CoreClient(new HttpTransport(`http://127.0.0.1:${PORT + 1}`)),
    );
    await fresh.restoreSession(log);
    expect(fresh.finalSvg()).toBe(uiSvg);
  });
});
