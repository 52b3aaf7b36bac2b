// The input simulator: turns pointer/keyboard state into a stream of
// skeleton records, so human play in the browser exercises the server's
// full gesture recognizer instead of sending pre-digested gestures.

import { DirectionName, SkeletonRecord, Vec3 } from "./protocol.js";

export interface Pose {
  x: number; // lateral position, meters
  z: number; // depth, meters
  raiseLeft: boolean;
  raiseRight: boolean;
  handClosed: boolean; // space held: open -> closed drives the grab gesture
  steer: DirectionName | null;
}

export const X_RANGE = 1.5;
export const Z_MIN = 0.5;
export const Z_MAX = 4.5;

// Right-arm poses whose wrist stays above the shoulder raise margin while
// the wrist-minus-elbow vector quantizes to the wanted direction.
const STEER_POSES: Record<DirectionName, { elbow: [number, number]; wrist: [number, number] }> = {
  right: { elbow: [0.3, 1.2], wrist: [0.8, 1.65] },
  left: { elbow: [0.3, 1.2], wrist: [-0.2, 1.65] },
  up: { elbow: [0.3, 1.2], wrist: [0.3, 1.8] },
  down: { elbow: [0.3, 2.3], wrist: [0.3, 1.7] },
};

const RAISED_WRIST_Y = 1.7;
const LOWERED_WRIST_Y = 0.8;

function clamp(v: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, v));
}

export class SkeletonSynth {
  readonly pose: Pose = {
    x: 0,
    z: 4.0,
    raiseLeft: false,
    raiseRight: false,
    handClosed: false,
    steer: null,
  };
  private lastT = -1;

  /** Horizontal pointer position as a 0..1 fraction of the view width. */
  setPointer(fraction: number): void {
    this.pose.x = clamp(fraction, 0, 1) * 2 * X_RANGE - X_RANGE;
  }

  setDepth(z: number): void {
    this.pose.z = clamp(z, Z_MIN, Z_MAX);
  }

  nudgeDepth(dz: number): void {
    this.setDepth(this.pose.z + dz);
  }

  /** One skeleton record; t_ms is forced monotone non-decreasing. */
  next(nowMs: number): SkeletonRecord {
    const t = Math.max(Math.round(nowMs), this.lastT + 1);
    this.lastT = t;
    const { x, z } = this.pose;
    const joint = (dx: number, y: number): Vec3 => [x + dx, y, z];

    let elbowR: Vec3 = joint(0.3, 1.1);
    let wristR: Vec3 = joint(0.3, this.pose.raiseRight ? RAISED_WRIST_Y : LOWERED_WRIST_Y);
    if (this.pose.raiseRight && this.pose.steer !== null) {
      const steer = STEER_POSES[this.pose.steer];
      elbowR = joint(steer.elbow[0], steer.elbow[1]);
      wristR = joint(steer.wrist[0], steer.wrist[1]);
    }

    const hand = this.pose.handClosed ? "closed" : "open";
    return {
      type: "skeleton",
      t_ms: t,
      joints: {
        head: joint(0, 1.6),
        spine: joint(0, 1.0),
        shoulder_l: joint(-0.2, 1.4),
        shoulder_r: joint(0.2, 1.4),
        elbow_l: joint(-0.3, 1.1),
        elbow_r: elbowR,
        wrist_l: joint(-0.3, this.pose.raiseLeft ? RAISED_WRIST_Y : LOWERED_WRIST_Y),
        wrist_r: wristR,
      },
      hand_l: hand,
      hand_r: hand,
    };
  }
}
