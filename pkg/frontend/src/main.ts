// Browser wiring: pointer/keys -> skeleton synth -> session client, and
// frame/mode records -> canvas/status line.

import { renderBoard } from "./board.js";
import { SessionClient } from "./client.js";
import { emitRecord, FrameRecord, GestureRecord } from "./protocol.js";
import { SkeletonSynth, Z_MAX, Z_MIN } from "./skeleton.js";

const EMIT_PERIOD_MS = 33; // ~30 Hz input stream

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

const canvas = byId<HTMLCanvasElement>("board");
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("canvas 2d context unavailable");

const statusEl = byId<HTMLSpanElement>("status");
const modeEl = byId<HTMLSpanElement>("mode");
const depthSlider = byId<HTMLInputElement>("depth");
const depthValue = byId<HTMLSpanElement>("depth-value");
const rawToggle = byId<HTMLInputElement>("raw-gestures");

const params = new URLSearchParams(location.search);
const url = params.get("server") ?? `ws://${location.hostname || "127.0.0.1"}:8765`;

const synth = new SkeletonSynth();
let lastFrame: FrameRecord | null = null;
let connected = false;

const client = new SessionClient(
  url,
  (u) => new WebSocket(u),
  {
    onRecord(record) {
      if (record.type === "frame") {
        lastFrame = record;
        renderBoard(ctx, record.pixels, canvas.width, canvas.height);
      } else if (record.type === "mode") {
        modeEl.textContent = record.mode.replace("_", " ");
      }
    },
    onStatus(status, detail) {
      connected = status === "connected";
      statusEl.textContent = detail ? `${status} (${detail})` : status;
      statusEl.className = status;
    },
    onBadRecord() {
      // keep showing the previous frame, but make the hiccup visible
      statusEl.textContent = "connected (bad record ignored)";
    },
  },
);

// -- input wiring -------------------------------------------------------------

canvas.addEventListener("pointermove", (ev) => {
  const rect = canvas.getBoundingClientRect();
  synth.setPointer((ev.clientX - rect.left) / rect.width);
});

canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  synth.nudgeDepth(ev.deltaY * 0.002);
  depthSlider.value = synth.pose.z.toFixed(2);
  depthValue.textContent = `${synth.pose.z.toFixed(2)} m`;
});

depthSlider.min = String(Z_MIN);
depthSlider.max = String(Z_MAX);
depthSlider.addEventListener("input", () => {
  synth.setDepth(Number(depthSlider.value));
  depthValue.textContent = `${synth.pose.z.toFixed(2)} m`;
});

const ARROWS: Record<string, "up" | "down" | "left" | "right"> = {
  ArrowUp: "up",
  ArrowDown: "down",
  ArrowLeft: "left",
  ArrowRight: "right",
};

function sendRawGesture(record: GestureRecord): void {
  client.sendLine(emitRecord(record));
}

window.addEventListener("keydown", (ev) => {
  if (ev.repeat) return;
  if (ev.code === "KeyL") synth.pose.raiseLeft = true;
  else if (ev.code === "KeyR") synth.pose.raiseRight = true;
  else if (ev.code === "Space") {
    synth.pose.handClosed = true;
    ev.preventDefault();
    if (rawToggle.checked) sendRawGesture({ type: "gesture", event: "grab" });
  } else if (ev.code in ARROWS) {
    synth.pose.steer = ARROWS[ev.code];
    ev.preventDefault();
    if (rawToggle.checked) {
      sendRawGesture({ type: "gesture", event: "direction", direction: ARROWS[ev.code] });
    }
  }
});

window.addEventListener("keyup", (ev) => {
  if (ev.code === "KeyL") synth.pose.raiseLeft = false;
  else if (ev.code === "KeyR") synth.pose.raiseRight = false;
  else if (ev.code === "Space") synth.pose.handClosed = false;
  else if (ev.code in ARROWS && synth.pose.steer === ARROWS[ev.code]) synth.pose.steer = null;
});

setInterval(() => {
  if (!connected || rawToggle.checked) return;
  client.sendLine(emitRecord(synth.next(performance.now())));
}, EMIT_PERIOD_MS);

renderBoard(ctx, "O".repeat(150), canvas.width, canvas.height);
client.connect();

export { client, synth, lastFrame };
