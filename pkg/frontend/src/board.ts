// Board renderer: 150 glowing dots on a dark canvas, radial falloff
// standing in for the light diffusion of the physical build. Rendering is
// stateless: one frame record fully determines the pixels drawn.

import { BOARD_HEIGHT, BOARD_WIDTH, PixelChar } from "./protocol.js";

export const GLOW_COLORS: Record<PixelChar, string> = {
  O: "#15151c",
  R: "#ff3b30",
  B: "#3b7bff",
  P: "#c05cff",
};

export const BACKGROUND = "#07070b";

// The structural subset of CanvasRenderingContext2D the renderer needs;
// tests substitute a recording fake.
export interface Canvas2DLike {
  fillStyle: string | CanvasGradient | CanvasPattern;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  createRadialGradient(
    x0: number, y0: number, r0: number,
    x1: number, y1: number, r1: number,
  ): CanvasGradient;
}

export interface CellSpot {
  cx: number;
  cy: number;
  radius: number;
}

export function cellSpot(index: number, width: number, height: number): CellSpot {
  const col = index % BOARD_WIDTH;
  const row = Math.floor(index / BOARD_WIDTH);
  const cell = Math.min(width / BOARD_WIDTH, height / BOARD_HEIGHT);
  const x0 = (width - cell * BOARD_WIDTH) / 2;
  const y0 = (height - cell * BOARD_HEIGHT) / 2;
  return {
    cx: x0 + (col + 0.5) * cell,
    cy: y0 + (row + 0.5) * cell,
    radius: cell * 0.46,
  };
}

export function renderBoard(
  ctx: Canvas2DLike,
  pixels: string,
  width: number,
  height: number,
): void {
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, width, height);
  for (let i = 0; i < pixels.length; i++) {
    const ch = pixels[i] as PixelChar;
    const { cx, cy, radius } = cellSpot(i, width, height);
    if (ch === "O") {
      ctx.fillStyle = GLOW_COLORS.O;
      ctx.beginPath();
      ctx.arc(cx, cy, radius * 0.35, 0, Math.PI * 2);
      ctx.fill();
      continue;
    }
    const glow = ctx.createRadialGradient(cx, cy, radius * 0.1, cx, cy, radius);
    glow.addColorStop(0, "#ffffff");
    glow.addColorStop(0.25, GLOW_COLORS[ch]);
    glow.addColorStop(1, "rgba(0,0,0,0)");
    ctx.fillStyle = glow;
    ctx.beginPath();
    ctx.arc(cx, cy, radius, 0, Math.PI * 2);
    ctx.fill();
  }
}
