/**
 * Layout for the parallel-coordinates strip: one column per polytope
 * vertex (left to right by vertex index), four colored ticks per column
 * showing the vertex's x, y, z, w values on a shared vertical scale.
 *
 * Pure pixel computation so tests can compare tick positions across
 * snapshots without a canvas.
 */
import type { SceneDoc } from "./scenedoc.js";

export interface StripOptions {
  /** total strip width in pixels */
  width: number;
  /** total strip height in pixels */
  height: number;
  /** value mapped to the strip bottom */
  min: number;
  /** value mapped to the strip top */
  max: number;
  /** horizontal padding inside each vertex column, pixels */
  pad: number;
}

export const DEFAULT_STRIP: StripOptions = {
  width: 640,
  height: 96,
  min: -2,
  max: 2,
  pad: 4,
};

export interface Tick {
  vertex: number;
  channel: "x" | "y" | "z" | "w";
  color: "red" | "green" | "blue" | "yellow";
  /** left edge of the tick, device pixels */
  x: number;
  /** vertical center of the tick, device pixels */
  y: number;
  /** tick width in pixels */
  width: number;
}

/** Every tick of the strip for one document, in draw order. */
export function tickLayout(
  doc: SceneDoc,
  options: StripOptions = DEFAULT_STRIP,
): Tick[] {
  const { channels, colors, values } = doc.parallel_coords;
  const count = values.length;
  if (count === 0) {
    return [];
  }
  const column = options.width / count;
  const lane = (column - 2 * options.pad) / channels.length;
  const span = options.max - options.min;
  const ticks: Tick[] = [];
  values.forEach((row, vertex) => {
    channels.forEach((channel, c) => {
      const value = row[c]!;
      const unit = (value - options.min) / span;
      ticks.push({
        vertex,
        channel,
        color: colors[c]!,
        x: Math.round(vertex * column + options.pad + c * lane),
        y: Math.round((1 - unit) * options.height),
        width: Math.max(1, Math.floor(lane) - 1),
      });
    });
  });
  return ticks;
}

/** Ticks of one channel only, ordered by vertex index. */
export function channelTicks(
  ticks: Tick[],
  channel: Tick["channel"],
): Tick[] {
  return ticks.filter((tick) => tick.channel === channel);
}

/** Draw the strip onto a 2-D canvas context. */
export function drawStrip(
  ctx: CanvasRenderingContext2D,
  doc: SceneDoc,
  options: StripOptions = DEFAULT_STRIP,
): void {
  ctx.clearRect(0, 0, options.width, options.height);
  ctx.fillStyle = "#111";
  ctx.fillRect(0, 0, options.width, options.height);
  for (const tick of tickLayout(doc, options)) {
    ctx.fillStyle = tick.color;
    ctx.fillRect(tick.x, tick.y - 1, tick.width, 3);
  }
}
