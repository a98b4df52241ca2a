/** Action vocabulary and the line-delimited log encoding.
 *
 * The wire format must match the core byte-for-byte: JSON objects with
 * sorted keys, `", "` / `": "` separators, ASCII-escaped strings, one
 * action per line under a `{"version": "1"}` header, trailing newline.
 * The UI never interprets actions itself; it only produces and replays
 * them, so fidelity of this module is what makes saved sessions portable
 * between the browser and the CLI.
 */

export type Boundary = "source" | "target";
export type Bias = "left" | "right" | null;
export type Direction = "up" | "down";
export type Shape = "circle" | "square";

export type Action =
  | { type: "AddZeroCell"; name: string }
  | { type: "Select"; id: number }
  | { type: "Identity" }
  | { type: "SetSource" }
  | { type: "SetTarget"; name: string }
  | { type: "Attach"; id: number; boundary: Boundary; offset: number }
  | { type: "Contract"; path: string; lo: number; hi: number; bias: Bias }
  | {
      type: "Expand";
      path: string;
      height: number;
      split: number;
      direction: Direction;
    }
  | { type: "Theorem"; name: string }
  | { type: "Rename"; id: number; name: string }
  | { type: "SetInvertible"; id: number; flag: boolean }
  | { type: "SetColor"; id: number; color: string }
  | { type: "SetShape"; id: number; shape: Shape }
  | { type: "ClearWorkspace" }
  | { type: "ViewChange"; selectors: string[]; dims: number };

type FieldKind =
  | "string"
  | "int"
  | "bool"
  | "bias"
  | "boundary"
  | "direction"
  | "shape"
  | "selectors";

interface FieldSpec {
  kind: FieldKind;
  default?: unknown;
}

const SCHEMAS: Record<string, Record<string, FieldSpec>> = {
  AddZeroCell: { name: { kind: "string" } },
  Select: { id: { kind: "int" } },
  Identity: {},
  SetSource: {},
  SetTarget: { name: { kind: "string" } },
  Attach: {
    id: { kind: "int" },
    boundary: { kind: "boundary" },
    offset: { kind: "int", default: 0 },
  },
  Contract: {
    path: { kind: "string" },
    lo: { kind: "int" },
    hi: { kind: "int" },
    bias: { kind: "bias", default: null },
  },
  Expand: {
    path: { kind: "string" },
    height: { kind: "int" },
    split: { kind: "int" },
    direction: { kind: "direction", default: "up" },
  },
  Theorem: { name: { kind: "string" } },
  Rename: { id: { kind: "int" }, name: { kind: "string" } },
  SetInvertible: { id: { kind: "int" }, flag: { kind: "bool" } },
  SetColor: { id: { kind: "int" }, color: { kind: "string" } },
  SetShape: { id: { kind: "int" }, shape: { kind: "shape" } },
  ClearWorkspace: {},
  ViewChange: { selectors: { kind: "selectors" }, dims: { kind: "int" } },
};

export class LogFormatError extends Error {}

function checkField(name: string, spec: FieldSpec, value: unknown): unknown {
  switch (spec.kind) {
    case "string":
      if (typeof value !== "string") break;
      return value;
    case "int":
      if (typeof value !== "number" || !Number.isInteger(value)) break;
      return value;
    case "bool":
      if (typeof value !== "boolean") break;
      return value;
    case "bias":
      if (value !== null && value !== "left" && value !== "right") break;
      return value;
    case "boundary":
      if (value !== "source" && value !== "target") break;
      return value;
    case "direction":
      if (value !== "up" && value !== "down") break;
      return value;
    case "shape":
      if (value !== "circle" && value !== "square") break;
      return value;
    case "selectors":
      if (!Array.isArray(value) || value.some((s) => typeof s !== "string")) {
        break;
      }
      return value;
  }
  throw new LogFormatError(`field ${name} has the wrong shape`);
}

/** Strict mirror of the core's action decoder. */
export function decodeAction(obj: unknown): Action {
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new LogFormatError("an action must be a JSON object");
  }
  const rec = obj as Record<string, unknown>;
  const type = rec["type"];
  if (typeof type !== "string" || !(type in SCHEMAS)) {
    throw new LogFormatError(`unknown action type ${JSON.stringify(type)}`);
  }
  const schema = SCHEMAS[type];
  const out: Record<string, unknown> = { type };
  for (const key of Object.keys(rec)) {
    if (key === "type") continue;
    if (!(key in schema)) {
      throw new LogFormatError(`action ${type} has no field ${key}`);
    }
  }
  for (const [field, spec] of Object.entries(schema)) {
    if (field in rec) {
      out[field] = checkField(field, spec, rec[field]);
    } else if ("default" in spec) {
      out[field] = spec.default;
    } else {
      throw new LogFormatError(`action ${type} is missing field ${field}`);
    }
  }
  return out as unknown as Action;
}

function escapeAscii(s: string): string {
  let out = '"';
  for (let i = 0; i < s.length; i++) {
    const c = s.charCodeAt(i);
    const ch = s[i];
    if (ch === '"') out += '\\"';
    else if (ch === "\\") out += "\\\\";
    else if (ch === "\n") out += "\\n";
    else if (ch === "\r") out += "\\r";
    else if (ch === "\t") out += "\\t";
    else if (ch === "\b") out += "\\b";
    else if (ch === "\f") out += "\\f";
    else if (c < 0x20 || c > 0x7e) {
      out += "\\u" + c.toString(16).padStart(4, "0");
    } else out += ch;
  }
  return out + '"';
}

/** json.dumps(value, sort_keys=True) for the value shapes actions use. */
export function pyJson(value: unknown): string {
  if (value === null) return "null";
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number") {
    if (!Number.isInteger(value)) {
      throw new LogFormatError("action logs carry integers only");
    }
    return String(value);
  }
  if (typeof value === "string") return escapeAscii(value);
  if (Array.isArray(value)) {
    return "[" + value.map(pyJson).join(", ") + "]";
  }
  const rec = value as Record<string, unknown>;
  const body = Object.keys(rec)
    .sort()
    .map((k) => `${escapeAscii(k)}: ${pyJson(rec[k])}`)
    .join(", ");
  return "{" + body + "}";
}

export function encodeAction(a: Action): string {
  // round through the decoder so defaulted fields are always materialized
  return pyJson(decodeAction(a as unknown as Record<string, unknown>));
}

export const LOG_HEADER = '{"version": "1"}';

export function encodeLog(actions: Action[]): string {
  const lines = [LOG_HEADER, ...actions.map(encodeAction)];
  return lines.join("\n") + "\n";
}

export function parseLog(text: string): Action[] {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) {
    throw new LogFormatError("line 1: missing header");
  }
  let header: unknown;
  try {
    header = JSON.parse(lines[0]);
  } catch {
    throw new LogFormatError("line 1: not JSON");
  }
  if (
    typeof header !== "object" ||
    header === null ||
    (header as Record<string, unknown>)["version"] !== "1"
  ) {
    throw new LogFormatError("line 1: unsupported log version");
  }
  const out: Action[] = [];
  for (let i = 1; i < lines.length; i++) {
    let obj: unknown;
    try {
      obj = JSON.parse(lines[i]);
    } catch {
      throw new LogFormatError(`line ${i + 1}: not JSON`);
    }
    try {
      out.push(decodeAction(obj));
    } catch (e) {
      const reason = e instanceof Error ? e.message : String(e);
      throw new LogFormatError(`line ${i + 1}: ${reason}`);
    }
  }
  return out;
}
