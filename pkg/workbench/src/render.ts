// Wireframe rendering: pure projection math producing a draw list, plus a
// small canvas painter. Stronger sections draw darker and thicker. The
// draw list is plain data so tests run without a DOM, and the painter
// falls back to a flat elevation view when no 2D context is available
// either (it simply reuses the draw list with a side-on view).

import { N_BEAM_SECTIONS, N_COLUMN_SECTIONS } from './session.js';
import type { SkeletonDoc } from './types.js';

export interface ViewParams {
  yaw: number;   // radians about the vertical axis
  pitch: number; // radians; 0 gives a straight-on elevation
  scale: number; // pixels per foot
  width: number;
  height: number;
}

export interface DrawLine {
  bar: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
  color: string;
  selected: boolean;
  rank: number; // 1-based strength rank within the bar's sub-library
}

export const ELEVATION_VIEW: Pick<ViewParams, 'yaw' | 'pitch'> = {
  yaw: 0,
  pitch: 0,
};

export function project(
  p: [number, number, number],
  view: ViewParams,
  center: [number, number, number],
): [number, number] {
  const cy = Math.cos(view.yaw);
  const sy = Math.sin(view.yaw);
  const cp = Math.cos(view.pitch);
  const sp = Math.sin(view.pitch);
  const x = p[0] - center[0];
  const y = p[1] - center[1];
  const z = p[2] - center[2];
  const rx = cy * x + sy * y;
  const ry = -sy * x + cy * y;
  const sx = rx;
  const syc = cp * z + sp * ry;
  return [view.width / 2 + sx * view.scale,
          view.height / 2 - syc * view.scale];
}

export function skeletonCenter(sk: SkeletonDoc): [number, number, number] {
  let [mx, my, mz] = [0, 0, 0];
  let n = 0;
  for (const bar of sk.bars) {
    for (const p of [bar.p1, bar.p2]) {
      mx += p[0];
      my += p[1];
      mz += p[2];
      n += 1;
    }
  }
  return n ? [mx / n, my / n, mz / n] : [0, 0, 0];
}

export function fitScale(sk: SkeletonDoc, width: number, height: number): number {
  let extent = 1;
  const c = skeletonCenter(sk);
  for (const bar of sk.bars) {
    for (const p of [bar.p1, bar.p2]) {
      extent = Math.max(extent, Math.abs(p[0] - c[0]), Math.abs(p[1] - c[1]),
                        Math.abs(p[2] - c[2]));
    }
  }
  return (0.42 * Math.min(width, height)) / extent;
}

export function strengthRank(kind: 'column' | 'beam', index: number): number {
  return index + 1; // sub-libraries are ordered light to strong
}

export function rankFraction(kind: 'column' | 'beam', index: number): number {
  const n = kind === 'column' ? N_COLUMN_SECTIONS : N_BEAM_SECTIONS;
  return strengthRank(kind, index) / n;
}

const NEUTRAL_COLOR = '#9aa5b1';

export function barStyle(
  kind: 'column' | 'beam',
  index: number | null,
): { width: number; color: string; rank: number } {
  if (index === null) {
    return { width: 1.5, color: NEUTRAL_COLOR, rank: 0 };
  }
  const f = rankFraction(kind, index);
  const shade = Math.round(200 - 170 * f);
  return {
    width: 1 + 5 * f,
    color: `rgb(${shade},${shade},${Math.min(255, shade + 25)})`,
    rank: strengthRank(kind, index),
  };
}

export function buildDrawList(
  sk: SkeletonDoc,
  assignment: (number | null)[],
  selected: Set<number>,
  view: ViewParams,
): DrawLine[] {
  const center = skeletonCenter(sk);
  const lines: DrawLine[] = sk.bars.map((bar, i) => {
    const [x1, y1] = project(bar.p1, view, center);
    const [x2, y2] = project(bar.p2, view, center);
    const style = barStyle(bar.kind, assignment[i] ?? null);
    return {
      bar: i,
      x1,
      y1,
      x2,
      y2,
      width: style.width,
      color: style.color,
      selected: selected.has(i),
      rank: style.rank,
    };
  });
  // draw thin members first so strong ones stay visible
  return lines.sort((a, b) => a.width - b.width);
}

export function paint(ctx: CanvasRenderingContext2D, lines: DrawLine[]): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  for (const line of lines) {
    ctx.beginPath();
    ctx.moveTo(line.x1, line.y1);
    ctx.lineTo(line.x2, line.y2);
    ctx.lineWidth = line.selected ? line.width + 2 : line.width;
    ctx.strokeStyle = line.selected ? '#e4572e' : line.color;
    ctx.stroke();
  }
}
