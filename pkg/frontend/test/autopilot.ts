// Snake autopilot for the scripted session: reads the 150-char pixel string
// (purple head, blue body, red food) and picks the next steering direction.

import { BOARD_HEIGHT, BOARD_WIDTH, DirectionName } from "../src/protocol.js";

export interface BoardView {
  head: [number, number] | null;
  food: [number, number] | null;
  bodyCells: Set<number>;
  score: number;
}

const OPPOSITE: Record<DirectionName, DirectionName> = {
  up: "down",
  down: "up",
  left: "right",
  right: "left",
};

const DELTAS: Record<DirectionName, [number, number]> = {
  up: [0, -1],
  down: [0, 1],
  left: [-1, 0],
  right: [1, 0],
};

export function readBoard(pixels: string): BoardView {
  let head: [number, number] | null = null;
  let food: [number, number] | null = null;
  const bodyCells = new Set<number>();
  let blue = 0;
  for (let i = 0; i < pixels.length; i++) {
    const col = i % BOARD_WIDTH;
    const row = Math.floor(i / BOARD_WIDTH);
    if (pixels[i] === "P") head = [col, row];
    else if (pixels[i] === "R") food = [col, row];
    else if (pixels[i] === "B") {
      bodyCells.add(i);
      blue++;
    }
  }
  return { head, food, bodyCells, score: Math.max(0, blue - 2) };
}

function safe(view: BoardView, from: [number, number], dir: DirectionName): boolean {
  const [dc, dr] = DELTAS[dir];
  const col = from[0] + dc;
  const row = from[1] + dr;
  if (col < 0 || col >= BOARD_WIDTH || row < 0 || row >= BOARD_HEIGHT) return false;
  return !view.bodyCells.has(row * BOARD_WIDTH + col);
}

/** Greedy chase: prefer the axis with the larger distance to the food,
 * never reverse, fall back to any safe direction. */
export function planMove(view: BoardView, heading: DirectionName): DirectionName {
  if (!view.head || !view.food) return heading;
  const dx = view.food[0] - view.head[0];
  const dy = view.food[1] - view.head[1];
  const horizontal: DirectionName | null = dx > 0 ? "right" : dx < 0 ? "left" : null;
  const vertical: DirectionName | null = dy > 0 ? "down" : dy < 0 ? "up" : null;
  const preferred = Math.abs(dx) >= Math.abs(dy) ? [horizontal, vertical] : [vertical, horizontal];
  const candidates = [...preferred, heading, "up", "down", "left", "right"] as Array<
    DirectionName | null
  >;
  for (const dir of candidates) {
    if (dir === null) continue;
    if (dir === OPPOSITE[heading]) continue;
    if (safe(view, view.head, dir)) return dir;
  }
  return heading;
}

/** Track the heading from the last two observed head positions. */
export function observedHeading(
  prev: [number, number] | null,
  head: [number, number] | null,
  fallback: DirectionName,
): DirectionName {
  if (!prev || !head) return fallback;
  if (head[0] > prev[0]) return "right";
  if (head[0] < prev[0]) return "left";
  if (head[1] > prev[1]) return "down";
  if (head[1] < prev[1]) return "up";
  return fallback;
}
