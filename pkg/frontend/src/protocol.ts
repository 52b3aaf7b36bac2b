// Session protocol records, mirroring the server's grammar: one JSON object
// per newline-delimited line, discriminated by "type". Unknown fields are
// ignored, unknown types rejected.

export const BOARD_WIDTH = 15;
export const BOARD_HEIGHT = 10;
export const CELL_COUNT = BOARD_WIDTH * BOARD_HEIGHT;

export type PixelChar = "O" | "R" | "B" | "P";
export type HandState = "open" | "closed" | "unknown";
export type DirectionName = "up" | "down" | "left" | "right";
export type ZoneName = "a" | "b" | "out";

export const JOINT_NAMES = [
  "head",
  "spine",
  "shoulder_l",
  "shoulder_r",
  "elbow_l",
  "elbow_r",
  "wrist_l",
  "wrist_r",
] as const;
export type JointName = (typeof JOINT_NAMES)[number];
export type Vec3 = [number, number, number];

export interface SkeletonRecord {
  type: "skeleton";
  t_ms: number;
  joints: Record<JointName, Vec3>;
  hand_l: HandState;
  hand_r: HandState;
}

export interface GestureRecord {
  type: "gesture";
  event: "present" | "lowered" | "grab" | "zone" | "raised" | "direction";
  zone?: ZoneName;
  side?: "left" | "right";
  direction?: DirectionName;
}

export interface AbsentRecord {
  type: "absent";
  t_ms: number;
}

export interface FrameRecord {
  type: "frame";
  tick: number;
  pixels: string;
}

export interface ModeRecord {
  type: "mode";
  tick: number;
  mode: string;
}

export type SessionRecord =
  | SkeletonRecord
  | GestureRecord
  | AbsentRecord
  | FrameRecord
  | ModeRecord;

export class ProtocolError extends Error {
  readonly line: string;
  constructor(detail: string, line: string) {
    super(`${detail}: ${JSON.stringify(line)}`);
    this.line = line;
  }
}

const HAND_STATES: HandState[] = ["open", "closed", "unknown"];
const DIRECTIONS: DirectionName[] = ["up", "down", "left", "right"];
const ZONES: ZoneName[] = ["a", "b", "out"];
const GESTURE_EVENTS = ["present", "lowered", "grab", "zone", "raised", "direction"];
const PIXEL_RE = /^[ORBP]{150}$/;

function asFiniteNumber(value: unknown, what: string, line: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new ProtocolError(`${what} is not a finite number`, line);
  }
  return value;
}

function asVec3(value: unknown, what: string, line: string): Vec3 {
  if (!Array.isArray(value) || value.length !== 3) {
    throw new ProtocolError(`${what} is not an [x,y,z] triple`, line);
  }
  return [
    asFiniteNumber(value[0], what, line),
    asFiniteNumber(value[1], what, line),
    asFiniteNumber(value[2], what, line),
  ];
}

function asHandState(value: unknown): HandState {
  return HAND_STATES.includes(value as HandState) ? (value as HandState) : "unknown";
}

export function parseRecord(line: string): SessionRecord {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    throw new ProtocolError("record is not valid JSON", line);
  }
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new ProtocolError("record is not an object", line);
  }
  const rec = obj as Record<string, unknown>;
  switch (rec.type) {
    case "skeleton": {
      const rawJoints = rec.joints;
      if (typeof rawJoints !== "object" || rawJoints === null) {
        throw new ProtocolError("skeleton record has no joints", line);
      }
      const joints = {} as Record<JointName, Vec3>;
      for (const name of JOINT_NAMES) {
        joints[name] = asVec3((rawJoints as Record<string, unknown>)[name], `joint ${name}`, line);
      }
      return {
        type: "skeleton",
        t_ms: asFiniteNumber(rec.t_ms, "t_ms", line),
        joints,
        hand_l: asHandState(rec.hand_l),
        hand_r: asHandState(rec.hand_r),
      };
    }
    case "gesture": {
      const event = rec.event;
      if (!GESTURE_EVENTS.includes(event as string)) {
        throw new ProtocolError(`unknown gesture event ${String(event)}`, line);
      }
      const out: GestureRecord = { type: "gesture", event: event as GestureRecord["event"] };
      if (event === "zone") {
        if (!ZONES.includes(rec.zone as ZoneName)) {
          throw new ProtocolError("zone gesture needs a valid zone", line);
        }
        out.zone = rec.zone as ZoneName;
      } else if (event === "raised") {
        if (rec.side !== "left" && rec.side !== "right") {
          throw new ProtocolError("raised gesture needs a side", line);
        }
        out.side = rec.side;
      } else if (event === "direction") {
        if (!DIRECTIONS.includes(rec.direction as DirectionName)) {
          throw new ProtocolError("direction gesture needs a direction", line);
        }
        out.direction = rec.direction as DirectionName;
      }
      return out;
    }
    case "absent":
      return { type: "absent", t_ms: asFiniteNumber(rec.t_ms, "t_ms", line) };
    case "frame": {
      if (typeof rec.pixels !== "string" || !PIXEL_RE.test(rec.pixels)) {
        throw new ProtocolError("frame record needs 150 ORBP pixels", line);
      }
      return {
        type: "frame",
        tick: asFiniteNumber(rec.tick, "tick", line),
        pixels: rec.pixels,
      };
    }
    case "mode": {
      if (typeof rec.mode !== "string") {
        throw new ProtocolError("mode record needs a mode string", line);
      }
      return { type: "mode", tick: asFiniteNumber(rec.tick, "tick", line), mode: rec.mode };
    }
    default:
      throw new ProtocolError(`unknown record type ${String(rec.type)}`, line);
  }
}

// Emits with the same key order as the server's canonical form (values may
// still print differently: JSON has no float/int distinction).
export function emitRecord(record: SessionRecord): string {
  switch (record.type) {
    case "skeleton": {
      const joints: Record<string, Vec3> = {};
      for (const name of JOINT_NAMES) {
        joints[name] = record.joints[name];
      }
      return JSON.stringify({
        type: "skeleton",
        t_ms: record.t_ms,
        joints,
        hand_l: record.hand_l,
        hand_r: record.hand_r,
      });
    }
    case "gesture": {
      const out: Record<string, unknown> = { type: "gesture", event: record.event };
      if (record.zone !== undefined) out.zone = record.zone;
      if (record.side !== undefined) out.side = record.side;
      if (record.direction !== undefined) out.direction = record.direction;
      return JSON.stringify(out);
    }
    case "absent":
      return JSON.stringify({ type: "absent", t_ms: record.t_ms });
    case "frame":
      return JSON.stringify({ type: "frame", tick: record.tick, pixels: record.pixels });
    case "mode":
      return JSON.stringify({ type: "mode", tick: record.tick, mode: record.mode });
  }
}
