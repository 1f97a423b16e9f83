import { describe, expect, it } from 'vitest';

import {
  barStyle,
  buildDrawList,
  fitScale,
  project,
  rankFraction,
  skeletonCenter,
  type ViewParams,
} from '../src/render.js';
import { demoSkeleton } from './helpers.js';

const VIEW: ViewParams = { yaw: 0.8, pitch: 0.6, scale: 5, width: 800,
                           height: 600 };

describe('wireframe rendering', () => {
  it('projection is deterministic and centered', () => {
    const sk = demoSkeleton();
    const c = skeletonCenter(sk);
    const a = project([10, 20, 16], VIEW, c);
    const b = project([10, 20, 16], VIEW, c);
    expect(a).toEqual(b);
    const center = project(c, VIEW, c);
    expect(center[0]).toBeCloseTo(400);
    expect(center[1]).toBeCloseTo(300);
  });

  it('elevation view maps height to the screen vertical axis', () => {
    const flat: ViewParams = { ...VIEW, yaw: 0, pitch: 0 };
    const lo = project([0, 0, 0], flat, [0, 0, 0]);
    const hi = project([0, 0, 32], flat, [0, 0, 0]);
    expect(hi[0]).toBeCloseTo(lo[0]);
    expect(hi[1]).toBeLessThan(lo[1]); // up on screen
    // depth (y) is invisible straight on
    const near = project([0, 50, 0], flat, [0, 0, 0]);
    expect(near).toEqual(lo);
  });

  it('heaviest section gets maximum thickness rank', () => {
    expect(barStyle('beam', 8).rank).toBe(9);
    expect(rankFraction('beam', 8)).toBe(1);
    expect(rankFraction('column', 4)).toBe(1);
    expect(barStyle('beam', 8).width).toBeGreaterThan(
      barStyle('beam', 0).width);
    // stronger draws darker
    const dark = barStyle('beam', 8).color;
    const light = barStyle('beam', 0).color;
    const red = (c: string) => Number(c.match(/rgb\((\d+)/)![1]);
    expect(red(dark)).toBeLessThan(red(light));
  });

  it('renders neutral style when no assignment exists', () => {
    const sk = demoSkeleton();
    const lines = buildDrawList(sk, sk.bars.map(() => null), new Set(), VIEW);
    expect(lines).toHaveLength(sk.bars.length);
    for (const line of lines) {
      expect(line.color).toBe('#9aa5b1');
      expect(line.rank).toBe(0);
    }
  });

  it('marks selected bars and sorts thin lines first', () => {
    const sk = demoSkeleton();
    const assignment = sk.bars.map((b) => (b.kind === 'beam' ? 8 : 0));
    const selected = new Set([0, 1]);
    const lines = buildDrawList(sk, assignment, selected, VIEW);
    expect(lines.filter((l) => l.selected).map((l) => l.bar).sort())
      .toEqual([0, 1]);
    const widths = lines.map((l) => l.width);
    expect([...widths].sort((a, b) => a - b)).toEqual(widths);
  });

  it('fit scale keeps the model on screen', () => {
    const sk = demoSkeleton();
    const s = fitScale(sk, 800, 600);
    const c = skeletonCenter(sk);
    for (const bar of sk.bars) {
      for (const p of [bar.p1, bar.p2]) {
        const [x, y] = project(p, { ...VIEW, scale: s }, c);
        expect(x).toBeGreaterThanOrEqual(0);
        expect(x).toBeLessThanOrEqual(800);
        expect(y).toBeGreaterThanOrEqual(0);
        expect(y).toBeLessThanOrEqual(600);
      }
    }
  });
});
