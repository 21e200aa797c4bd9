import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { channelTicks, tickLayout } from "../src/parallelCoords.js";
import { parseSceneDoc } from "../src/scenedoc.js";

const FIXTURES = join(__dirname, "fixtures");

function loadDoc(name: string) {
  return parseSceneDoc(readFileSync(join(FIXTURES, name), "utf-8"));
}

describe("tickLayout", () => {
  it("lays out four colored ticks per vertex, left to right", () => {
    const doc = loadDoc("initial.scene");
    const ticks = tickLayout(doc);
    expect(ticks).toHaveLength(4 * doc.parallel_coords.values.length);
    const reds = channelTicks(ticks, "x");
    expect(reds.every((tick) => tick.color === "red")).toBe(true);
    expect(channelTicks(ticks, "w").every((t) => t.color === "yellow")).toBe(
      true,
    );
    for (let i = 1; i < reds.length; i++) {
      expect(reds[i]!.x).toBeGreaterThan(reds[i - 1]!.x);
      expect(reds[i]!.vertex).toBe(i);
    }
  });

  it("maps values monotonically downward on the strip", () => {
    const doc = loadDoc("initial.scene");
    const ticks = tickLayout(doc);
    const w = channelTicks(ticks, "w");
    // vertex 4 has the largest w, so its tick sits highest (smallest y)
    const ys = w.map((tick) => tick.y);
    expect(Math.min(...ys)).toBe(ys[4]);
  });

  it("keeps red and blue ticks static across a y-w rotation", () => {
    const frames = [];
    for (let i = 0; i <= 8; i++) {
      frames.push(loadDoc(join("yw", `frame_000${i}.scene`)));
    }
    const first = tickLayout(frames[0]!);
    const firstStatic = [
      ...channelTicks(first, "x"),
      ...channelTicks(first, "z"),
    ].map((tick) => `${tick.vertex}:${tick.x},${tick.y}`);

    let greenMoved = false;
    let yellowMoved = false;
    for (const frame of frames.slice(1)) {
      const ticks = tickLayout(frame);
      const staticNow = [
        ...channelTicks(ticks, "x"),
        ...channelTicks(ticks, "z"),
      ].map((tick) => `${tick.vertex}:${tick.x},${tick.y}`);
      expect(staticNow).toEqual(firstStatic);
      const green = channelTicks(ticks, "y");
      const yellow = channelTicks(ticks, "w");
      greenMoved ||= green.some(
        (tick, i) => tick.y !== channelTicks(first, "y")[i]!.y,
      );
      yellowMoved ||= yellow.some(
        (tick, i) => tick.y !== channelTicks(first, "w")[i]!.y,
      );
    }
    expect(greenMoved).toBe(true);
    expect(yellowMoved).toBe(true);
  });

  it("returns no ticks for an empty value table", () => {
    const doc = loadDoc("initial.scene");
    const bare = {
      ...doc,
      parallel_coords: { ...doc.parallel_coords, values: [] },
    };
    expect(tickLayout(bare)).toEqual([]);
  });
});
