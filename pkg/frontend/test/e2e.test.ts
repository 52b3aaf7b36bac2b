// Scripted playthrough against a real seeded server: walk in, raise a hand,
// steer the snake to score >= 3, drive it into a wall, and expect the score
// scroll. Everything flows through the session protocol and the server's
// own gesture recognizer; the test only moves the simulated body.

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import WebSocket from "ws";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { SessionClient } from "../src/client.js";
import { emitRecord, DirectionName } from "../src/protocol.js";
import { SkeletonSynth } from "../src/skeleton.js";
import { observedHeading, planMove, readBoard } from "./autopilot.js";

const SERVER_CONFIG = {
  tick_ms: 8,
  seed: 7,
  speed: { base_ms: 90, step_ms: 5, floor_ms: 50 },
  absence_timeout_ms: 5000,
};

let proc: ChildProcess;
let port = 0;

function startServer(): Promise<number> {
  const dir = mkdtempSync(join(tmpdir(), "pixelboard-e2e-"));
  const cfgPath = join(dir, "config.json");
  writeFileSync(cfgPath, JSON.stringify(SERVER_CONFIG));
  proc = spawn("python3", ["-u", "-m", "pixelboard", "serve", "--listen", "127.0.0.1:0", "--config", cfgPath]);
  return new Promise((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server never reported its port")), 15_000);
    let buffer = "";
    proc.stdout!.on("data", (chunk) => {
      buffer += String(chunk);
      const match = buffer.match(/listening on ws:\/\/127\.0\.0\.1:(\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(Number(match[1]));
      }
    });
    proc.stderr!.on("data", () => {});
    proc.on("exit", (code) => reject(new Error(`server exited early (${code})`)));
  });
}

beforeAll(async () => {
  port = await startServer();
}, 30_000);

afterAll(() => {
  proc?.kill("SIGINT");
});

describe("scripted session", () => {
  test(
    "walk in, raise, steer to score >= 3, die, reach the score scroll",
    async () => {
      const synth = new SkeletonSynth();
      let mode = "";
      let heading: DirectionName = "right";
      let prevHead: [number, number] | null = null;
      let bestScore = 0;
      let sawSnakePlay = false;

      const done = new Promise<void>((resolve, reject) => {
        const watchdog = setTimeout(
          () => reject(new Error(`stuck in mode ${mode} (best score ${bestScore})`)),
          50_000,
        );
        const client = new SessionClient(
          `ws://127.0.0.1:${port}`,
          (url) => new WebSocket(url) as never,
          {
            onRecord(record) {
              if (record.type === "mode") {
                mode = record.mode;
                if (mode === "snake_play") sawSnakePlay = true;
                if (mode === "score_scroll" && sawSnakePlay) {
                  clearTimeout(watchdog);
                  clearInterval(driver);
                  client.close();
                  resolve();
                }
                return;
              }
              if (record.type !== "frame" || mode !== "snake_play") return;
              const view = readBoard(record.pixels);
              heading = observedHeading(prevHead, view.head, heading);
              prevHead = view.head ?? prevHead;
              bestScore = Math.max(bestScore, view.score);
              if (view.score >= 3) {
                synth.pose.steer = heading; // hold course into the wall
              } else {
                synth.pose.steer = planMove(view, heading);
              }
            },
          },
        );

        const driver = setInterval(() => {
          // walk toward the board until the game zone, then keep playing
          if (mode === "attract_creature" || mode === "attract_gol") {
            if (synth.pose.z > 1.0) synth.nudgeDepth(-0.15);
          } else if (mode === "snake_idle") {
            synth.pose.raiseRight = true;
          }
          client.sendLine(emitRecord(synth.next(performance.now())));
        }, 20);

        client.connect();
      });

      await done;
      expect(bestScore).toBeGreaterThanOrEqual(3);
      expect(sawSnakePlay).toBe(true);
    },
    60_000,
  );
});
