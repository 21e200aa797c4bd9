/**
 * Builds the three.js scene graph for one scene document: every slice
 * mesh at its parabola placement, balls for points, bars for segments,
 * semi-transparent fills for polygons, and the RGB axes glyph.
 *
 * The builder is a pure function of (document, style); no geometry is
 * recomputed client-side and no state survives between snapshots.
 */
import * as THREE from "three";

import type { SceneDoc, Slice } from "./scenedoc.js";

export interface StyleTable {
  /** sphere radius per slice point, model units */
  ballRadius: number;
  /** cylinder radius per slice segment, model units */
  barRadius: number;
  /** polygon fill opacity in [0, 1] */
  faceOpacity: number;
  /** radius of the placeholder ring shown for empty slices */
  placeholderRadius: number;
}

export const DEFAULT_STYLE: StyleTable = {
  ballRadius: 0.04,
  barRadius: 0.02,
  faceOpacity: 0.35,
  placeholderRadius: 0.4,
};

const BALL_COLOR = 0xf2f2f2;
const BAR_COLOR = 0x8899aa;
const FACE_COLOR = 0x3a7bd5;
const PLACEHOLDER_COLOR = 0x555555;

export const AXIS_COLORS = {
  x: 0xcc2222,
  y: 0x22aa22,
  z: 0x2233cc,
} as const;

const UP = new THREE.Vector3(0, 1, 0);

function ball(pos: [number, number, number], style: StyleTable): THREE.Mesh {
  const mesh = new THREE.Mesh(
    new THREE.SphereGeometry(style.ballRadius, 16, 12),
    new THREE.MeshLambertMaterial({ color: BALL_COLOR }),
  );
  mesh.name = "ball";
  mesh.position.set(pos[0], pos[1], pos[2]);
  return mesh;
}

function bar(
  a: [number, number, number],
  b: [number, number, number],
  style: StyleTable,
): THREE.Mesh {
  const from = new THREE.Vector3(...a);
  const to = new THREE.Vector3(...b);
  const span = to.clone().sub(from);
  const length = Math.max(span.length(), 1e-12);
  const mesh = new THREE.Mesh(
    new THREE.CylinderGeometry(style.barRadius, style.barRadius, length, 10, 1),
    new THREE.MeshLambertMaterial({ color: BAR_COLOR }),
  );
  mesh.name = "bar";
  mesh.position.copy(from.add(to).multiplyScalar(0.5));
  mesh.quaternion.setFromUnitVectors(UP, span.normalize());
  return mesh;
}

function face(
  ring: Array<[number, number, number]>,
  style: StyleTable,
): THREE.Mesh {
  const positions: number[] = [];
  for (let i = 1; i + 1 < ring.length; i++) {
    positions.push(...ring[0]!, ...ring[i]!, ...ring[i + 1]!);
  }
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute(
    "position",
    new THREE.Float32BufferAttribute(positions, 3),
  );
  geometry.computeVertexNormals();
  const mesh = new THREE.Mesh(
    geometry,
    new THREE.MeshLambertMaterial({
      color: FACE_COLOR,
      transparent: true,
      opacity: style.faceOpacity,
      side: THREE.DoubleSide,
      depthWrite: false,
    }),
  );
  mesh.name = "face";
  return mesh;
}

function placeholderRing(style: StyleTable): THREE.LineLoop {
  const positions: number[] = [];
  const n = 32;
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n;
    positions.push(
      style.placeholderRadius * Math.cos(angle),
      style.placeholderRadius * Math.sin(angle),
      0,
    );
  }
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute(
    "position",
    new THREE.Float32BufferAttribute(positions, 3),
  );
  const ring = new THREE.LineLoop(
    geometry,
    new THREE.LineBasicMaterial({
      color: PLACEHOLDER_COLOR,
      transparent: true,
      opacity: 0.4,
    }),
  );
  ring.name = "placeholder";
  return ring;
}

/** One positioned group per slice: balls, bars, faces (or a placeholder). */
export function buildSliceGroup(slice: Slice, style: StyleTable): THREE.Group {
  const group = new THREE.Group();
  group.name = `slice:${slice.placement.slice_index}`;
  const [ox, oy, oz] = slice.placement.world_offset;
  group.position.set(ox, oy, oz);
  group.scale.setScalar(slice.placement.scale);

  const coords: Array<[number, number, number]> = slice.points.map(
    ([, , x, y, z]) => [x, y, z],
  );
  if (coords.length === 0) {
    group.add(placeholderRing(style));
    return group;
  }
  for (const pos of coords) {
    group.add(ball(pos, style));
  }
  for (const [, i, j] of slice.segments) {
    group.add(bar(coords[i]!, coords[j]!, style));
  }
  for (const row of slice.polygons) {
    const ring = row.slice(1).map((id) => coords[id]!);
    group.add(face(ring, style));
  }
  return group;
}

/** The whole oval display for one document. */
export function buildSceneGraph(
  doc: SceneDoc,
  style: StyleTable = DEFAULT_STYLE,
): THREE.Group {
  const root = new THREE.Group();
  root.name = "scene-doc";
  for (const slice of doc.slices) {
    root.add(buildSliceGroup(slice, style));
  }
  return root;
}

/** Small x/y/z arrow triad; rendered in a corner, colors fixed RGB. */
export function buildAxesGlyph(length = 1): THREE.Group {
  const group = new THREE.Group();
  group.name = "axes";
  const axes: Array<[keyof typeof AXIS_COLORS, THREE.Vector3]> = [
    ["x", new THREE.Vector3(1, 0, 0)],
    ["y", new THREE.Vector3(0, 1, 0)],
    ["z", new THREE.Vector3(0, 0, 1)],
  ];
  for (const [name, dir] of axes) {
    const shaft = new THREE.Mesh(
      new THREE.CylinderGeometry(0.03 * length, 0.03 * length, length, 8),
      new THREE.MeshBasicMaterial({ color: AXIS_COLORS[name] }),
    );
    shaft.name = `axis:${name}`;
    shaft.position.copy(dir.clone().multiplyScalar(length / 2));
    shaft.quaternion.setFromUnitVectors(UP, dir);
    group.add(shaft);
  }
  return group;
}

export interface GraphCounts {
  balls: number;
  bars: number;
  faces: number;
  placeholders: number;
}

/** Count named nodes; the criterion check against document totals. */
export function countGraph(root: THREE.Object3D): GraphCounts {
  const counts = { balls: 0, bars: 0, faces: 0, placeholders: 0 };
  root.traverse((node) => {
    if (node.name === "ball") counts.balls += 1;
    else if (node.name === "bar") counts.bars += 1;
    else if (node.name === "face") counts.faces += 1;
    else if (node.name === "placeholder") counts.placeholders += 1;
  });
  return counts;
}

/**
 * Deterministic structural summary (names, transforms, ball positions)
 * used to check that offline and live rendering agree exactly.
 */
export function graphSummary(root: THREE.Object3D): string[] {
  const lines: string[] = [];
  root.traverse((node) => {
    const p = node.position;
    lines.push(
      `${node.name || node.type} @ ${p.x},${p.y},${p.z} s=${node.scale.x}`,
    );
  });
  return lines;
}
