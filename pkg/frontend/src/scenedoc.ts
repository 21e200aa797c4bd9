/**
 * Parsing and validation of scene documents received from the slicing
 * service (or loaded from .scene files).  The viewer never recomputes
 * geometry; this schema is its complete knowledge of the wire format.
 */
import { z } from "zod";

export const SUPPORTED_SCHEMA_VERSION = "1";

const finite = z.number().finite();
const index = z.number().int().nonnegative();

/** [edge_id, t, x, y, z] */
const pointRow = z.tuple([index, finite, finite, finite, finite]);

/** [face_id, point_i, point_j] */
const segmentRow = z.tuple([index, index, index]);

/** [cell_id, ring point ids...] with at least a triangle */
const polygonRow = z.array(z.number().int().nonnegative()).min(4);

const vec3 = z.tuple([finite, finite, finite]);

const sliceSchema = z
  .object({
    w_value: finite,
    placement: z.object({
      slice_index: z.number().int(),
      world_offset: vec3,
      scale: finite.positive(),
    }),
    points: z.array(pointRow),
    segments: z.array(segmentRow),
    polygons: z.array(polygonRow),
  })
  .superRefine((slice, ctx) => {
    const pointCount = slice.points.length;
    slice.segments.forEach(([, i, j], at) => {
      if (i >= pointCount || j >= pointCount) {
        ctx.addIssue({
          code: "custom",
          path: ["segments", at],
          message: `segment references point ${Math.max(i, j)} of ${pointCount}`,
        });
      }
    });
    slice.polygons.forEach((row, at) => {
      for (const id of row.slice(1)) {
        if (id >= pointCount) {
          ctx.addIssue({
            code: "custom",
            path: ["polygons", at],
            message: `polygon references point ${id} of ${pointCount}`,
          });
        }
      }
    });
  });

export const sceneDocSchema = z
  .object({
    schema_version: z.literal(SUPPORTED_SCHEMA_VERSION),
    polytope_name: z.string().min(1),
    rotation: z.array(finite).length(16),
    stack: z.object({
      delta_w: finite.positive(),
      count: z.number().int().positive(),
      w_origin: finite,
      focus_steps: z.number().int(),
    }),
    layout: z.object({
      spacing: finite.positive(),
      curvature: finite.nonnegative(),
      plane_height: finite,
    }),
    slices: z.array(sliceSchema).min(1),
    parallel_coords: z.object({
      channels: z.tuple([
        z.literal("x"),
        z.literal("y"),
        z.literal("z"),
        z.literal("w"),
      ]),
      colors: z.tuple([
        z.literal("red"),
        z.literal("green"),
        z.literal("blue"),
        z.literal("yellow"),
      ]),
      values: z.array(z.tuple([finite, finite, finite, finite])),
    }),
    axes_glyph: z.object({
      x: z.literal("red"),
      y: z.literal("green"),
      z: z.literal("blue"),
    }),
  })
  .refine((doc) => doc.slices.length === doc.stack.count, {
    message: "slices array does not match stack count",
  });

export type SceneDoc = z.infer<typeof sceneDocSchema>;
export type Slice = SceneDoc["slices"][number];

/** Service wire frames: one JSON object per text message. */
const frameSchema = z.discriminatedUnion("type", [
  z.object({ type: z.literal("scene"), doc: z.unknown() }),
  z.object({ type: z.literal("error"), message: z.string() }),
]);

export type ServiceFrame =
  | { type: "scene"; doc: SceneDoc }
  | { type: "error"; message: string };

export class SceneParseError extends Error {}

/** Parse one .scene document (file contents or a frame's doc field). */
export function parseSceneDoc(data: unknown): SceneDoc {
  const raw = typeof data === "string" ? parseJson(data) : data;
  if (
    typeof raw === "object" &&
    raw !== null &&
    "schema_version" in raw &&
    (raw as { schema_version: unknown }).schema_version !==
      SUPPORTED_SCHEMA_VERSION
  ) {
    throw new SceneParseError(
      `unsupported schema_version ${JSON.stringify(
        (raw as { schema_version: unknown }).schema_version,
      )}; supported: "${SUPPORTED_SCHEMA_VERSION}"`,
    );
  }
  const result = sceneDocSchema.safeParse(raw);
  if (!result.success) {
    const first = result.error.issues[0];
    const where = first ? first.path.join(".") : "document";
    const what = first ? first.message : "invalid";
    throw new SceneParseError(`invalid scene document at ${where}: ${what}`);
  }
  return result.data;
}

/** Parse one service text frame into a typed frame. */
export function parseFrame(text: string): ServiceFrame {
  const frame = frameSchema.safeParse(parseJson(text));
  if (!frame.success) {
    throw new SceneParseError("unrecognized service frame");
  }
  if (frame.data.type === "error") {
    return frame.data;
  }
  return { type: "scene", doc: parseSceneDoc(frame.data.doc) };
}

function parseJson(text: string): unknown {
  try {
    return JSON.parse(text);
  } catch (err) {
    throw new SceneParseError(`malformed JSON: ${(err as Error).message}`);
  }
}

export interface DocTotals {
  points: number;
  segments: number;
  polygons: number;
  emptySlices: number;
}

/** Mesh element totals across every slice of the document. */
export function docTotals(doc: SceneDoc): DocTotals {
  const totals = { points: 0, segments: 0, polygons: 0, emptySlices: 0 };
  for (const slice of doc.slices) {
    totals.points += slice.points.length;
    totals.segments += slice.segments.length;
    totals.polygons += slice.polygons.length;
    if (slice.points.length === 0) {
      totals.emptySlices += 1;
    }
  }
  return totals;
}
