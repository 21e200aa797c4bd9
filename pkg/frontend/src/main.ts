/**
 * Browser entry point: connect to the slicing service, render the oval
 * display, forward key presses, and keep the axes glyph and the
 * parallel-coordinates strip in sync with the newest snapshot.
 *
 * The camera looks down the negative z direction at the parabola of
 * slices; dragging orbits the 3-D view only and never touches 4-D state.
 */
import * as THREE from "three";

import { SessionConnection, type ConnectionStatus } from "./connection.js";
import { drawStrip, DEFAULT_STRIP } from "./parallelCoords.js";
import { parseSceneDoc, type SceneDoc } from "./scenedoc.js";
import { buildAxesGlyph, buildSceneGraph, DEFAULT_STYLE } from "./sliceGraph.js";

const CAMERA_DISTANCE = 30;
const CAMERA_HEIGHT = 6;

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id} element`);
  }
  return node as T;
}

class ViewerApp {
  private readonly renderer: THREE.WebGLRenderer;
  private readonly scene = new THREE.Scene();
  private readonly glyphScene = new THREE.Scene();
  private readonly camera: THREE.PerspectiveCamera;
  private readonly glyphCamera: THREE.PerspectiveCamera;
  private readonly glyph = buildAxesGlyph();
  private readonly strip: HTMLCanvasElement;
  private readonly banner: HTMLElement;
  private current: THREE.Group | null = null;
  private yaw = 0;
  private pitch = 0;
  private dragging = false;

  constructor(canvas: HTMLCanvasElement, strip: HTMLCanvasElement, banner: HTMLElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    this.camera = new THREE.PerspectiveCamera(45, 1, 0.1, 500);
    this.glyphCamera = new THREE.PerspectiveCamera(45, 1, 0.1, 10);
    this.glyphCamera.position.set(0, 0, 3);
    this.strip = strip;
    this.banner = banner;

    this.scene.background = new THREE.Color(0x101318);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.7));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(4, 10, 8);
    this.scene.add(sun);
    this.glyphScene.add(this.glyph);
    this.glyphScene.add(new THREE.AmbientLight(0xffffff, 1.0));

    this.placeCamera();
    window.addEventListener("resize", () => this.resize());
    canvas.addEventListener("pointerdown", () => (this.dragging = true));
    window.addEventListener("pointerup", () => (this.dragging = false));
    window.addEventListener("pointermove", (event) => {
      if (this.dragging) {
        this.yaw -= event.movementX * 0.005;
        this.pitch = Math.max(
          -1.2,
          Math.min(1.2, this.pitch - event.movementY * 0.005),
        );
        this.placeCamera();
      }
    });
    this.resize();
    this.renderer.setAnimationLoop(() => this.renderFrame());
  }

  private placeCamera(): void {
    const r = CAMERA_DISTANCE;
    this.camera.position.set(
      r * Math.sin(this.yaw) * Math.cos(this.pitch),
      CAMERA_HEIGHT + r * Math.sin(this.pitch),
      r * Math.cos(this.yaw) * Math.cos(this.pitch),
    );
    this.camera.lookAt(0, 0, -8);
  }

  private resize(): void {
    const width = window.innerWidth;
    const height = Math.max(window.innerHeight - this.strip.height, 1);
    this.renderer.setSize(width, height);
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
    this.strip.width = width;
  }

  private renderFrame(): void {
    const size = this.renderer.getSize(new THREE.Vector2());
    this.renderer.setViewport(0, 0, size.x, size.y);
    this.renderer.setScissorTest(false);
    this.renderer.render(this.scene, this.camera);

    // axes glyph in the upper-left corner, matching the main camera pose
    const inset = Math.min(120, size.x / 4);
    this.glyph.quaternion.copy(this.camera.quaternion).invert();
    this.renderer.clearDepth();
    this.renderer.setScissorTest(true);
    this.renderer.setScissor(8, size.y - inset - 8, inset, inset);
    this.renderer.setViewport(8, size.y - inset - 8, inset, inset);
    this.renderer.render(this.glyphScene, this.glyphCamera);
    this.renderer.setScissorTest(false);
  }

  showScene(doc: SceneDoc): void {
    if (this.current) {
      this.scene.remove(this.current);
    }
    this.current = buildSceneGraph(doc, DEFAULT_STYLE);
    this.scene.add(this.current);
    const ctx = this.strip.getContext("2d");
    if (ctx) {
      drawStrip(ctx, doc, { ...DEFAULT_STRIP, width: this.strip.width });
    }
  }

  showStatus(status: ConnectionStatus): void {
    this.banner.textContent =
      status === "open" ? "" : `service: ${status}`;
    this.banner.style.display = status === "open" ? "none" : "block";
  }

  showError(message: string): void {
    this.banner.textContent = message;
    this.banner.style.display = "block";
  }
}

function start(): void {
  const app = new ViewerApp(
    element<HTMLCanvasElement>("view"),
    element<HTMLCanvasElement>("strip"),
    element<HTMLElement>("banner"),
  );

  const url = `ws://${location.hostname}:${location.port || "8000"}/ws`;
  const connection = new SessionConnection(url, {
    onScene: (doc) => app.showScene(doc),
    onError: (message) => app.showError(message),
    onStatus: (status) => app.showStatus(status),
  });
  connection.connect();

  window.addEventListener("keydown", (event) => {
    if (event.key.length === 1 && !event.ctrlKey && !event.metaKey) {
      connection.sendKey(event.key);
    }
  });

  // offline inspection: drop a .scene file anywhere on the page
  window.addEventListener("dragover", (event) => event.preventDefault());
  window.addEventListener("drop", (event) => {
    event.preventDefault();
    const file = event.dataTransfer?.files?.[0];
    if (!file) {
      return;
    }
    file.text().then((text) => {
      try {
        app.showScene(parseSceneDoc(text));
      } catch (err) {
        app.showError((err as Error).message);
      }
    });
  });
}

start();
