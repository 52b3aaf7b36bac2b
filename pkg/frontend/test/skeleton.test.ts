import { spawnSync } from "node:child_process";
import { describe, expect, test } from "vitest";

import { emitRecord, parseRecord, SkeletonRecord } from "../src/protocol.js";
import { SkeletonSynth, X_RANGE, Z_MAX, Z_MIN } from "../src/skeleton.js";

const RAISE_MARGIN = 0.1;

function sampleLines(): string[] {
  const synth = new SkeletonSynth();
  const lines: string[] = [];
  let t = 0;
  const emit = () => lines.push(emitRecord(synth.next((t += 33))));

  for (let i = 0; i <= 20; i++) {
    synth.setPointer(i / 20);
    synth.setDepth(Z_MIN + (i / 20) * (Z_MAX - Z_MIN));
    emit();
  }
  synth.pose.raiseRight = true;
  emit();
  synth.pose.handClosed = true;
  emit();
  for (const steer of ["up", "down", "left", "right"] as const) {
    synth.pose.steer = steer;
    emit();
  }
  synth.pose.raiseRight = false;
  synth.pose.raiseLeft = true;
  synth.pose.handClosed = false;
  emit();
  lines.push(emitRecord({ type: "gesture", event: "grab" }));
  lines.push(emitRecord({ type: "gesture", event: "direction", direction: "up" }));
  lines.push(emitRecord({ type: "absent", t_ms: t + 33 }));
  return lines;
}

describe("input simulator", () => {
  test("every emitted line parses with this client's grammar", () => {
    for (const line of sampleLines()) {
      expect(() => parseRecord(line)).not.toThrow();
    }
  });

  test("every emitted line parses with the server's reference parser", () => {
    const lines = sampleLines();
    const probe = [
      "import sys",
      "from pixelboard.protocol import parse_message",
      "count = 0",
      "for line in sys.stdin:",
      "    line = line.strip()",
      "    if line:",
      "        parse_message(line)",
      "        count += 1",
      "print(f'parsed {count}')",
    ].join("\n");
    const result = spawnSync("python3", ["-c", probe], {
      input: lines.join("\n") + "\n",
      encoding: "utf8",
      timeout: 30_000,
    });
    expect(result.stderr).toBe("");
    expect(result.status).toBe(0);
    expect(result.stdout.trim()).toBe(`parsed ${lines.length}`);
  });

  test("t_ms is monotone even when the clock jumps backwards", () => {
    const synth = new SkeletonSynth();
    const times = [100, 200, 150, 150, 90, 300].map((now) => synth.next(now).t_ms);
    for (let i = 1; i < times.length; i++) {
      expect(times[i]).toBeGreaterThan(times[i - 1]);
    }
  });

  test("pointer and depth clamp to the sensor ranges", () => {
    const synth = new SkeletonSynth();
    synth.setPointer(-3);
    expect(synth.pose.x).toBe(-X_RANGE);
    synth.setPointer(9);
    expect(synth.pose.x).toBe(X_RANGE);
    synth.setDepth(0.1);
    expect(synth.pose.z).toBe(Z_MIN);
    synth.nudgeDepth(99);
    expect(synth.pose.z).toBe(Z_MAX);
  });

  test("raising lifts the wrist above the shoulder margin", () => {
    const synth = new SkeletonSynth();
    let rec = synth.next(10);
    expect(rec.joints.wrist_r[1]).toBeLessThan(rec.joints.shoulder_r[1]);
    synth.pose.raiseRight = true;
    rec = synth.next(20);
    expect(rec.joints.wrist_r[1]).toBeGreaterThan(rec.joints.shoulder_r[1] + RAISE_MARGIN);
    expect(rec.joints.wrist_l[1]).toBeLessThan(rec.joints.shoulder_l[1]);
  });

  test("steer poses quantize to the intended forearm direction", () => {
    const synth = new SkeletonSynth();
    synth.pose.raiseRight = true;
    const expectations: Record<string, (dx: number, dy: number) => boolean> = {
      right: (dx, dy) => Math.abs(dx) >= Math.abs(dy) && dx > 0,
      left: (dx, dy) => Math.abs(dx) >= Math.abs(dy) && dx < 0,
      up: (dx, dy) => Math.abs(dy) > Math.abs(dx) && dy > 0,
      down: (dx, dy) => Math.abs(dy) > Math.abs(dx) && dy < 0,
    };
    for (const steer of ["right", "left", "up", "down"] as const) {
      synth.pose.steer = steer;
      const rec: SkeletonRecord = synth.next(1000 + Math.random() * 10 + 50);
      const dx = rec.joints.wrist_r[0] - rec.joints.elbow_r[0];
      const dy = rec.joints.wrist_r[1] - rec.joints.elbow_r[1];
      expect(Math.hypot(dx, dy)).toBeGreaterThan(0.12);
      expect(expectations[steer](dx, dy)).toBe(true);
      // the steering arm must stay raised or play would stop
      expect(rec.joints.wrist_r[1]).toBeGreaterThan(rec.joints.shoulder_r[1] + RAISE_MARGIN);
    }
  });

  test("space maps open/closed onto both hands", () => {
    const synth = new SkeletonSynth();
    expect(synth.next(10).hand_r).toBe("open");
    synth.pose.handClosed = true;
    expect(synth.next(20).hand_r).toBe("closed");
  });
});
