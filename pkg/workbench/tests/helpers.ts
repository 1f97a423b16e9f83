// Shared fixtures: a miniature skeleton and a canned service transport.

import type { FetchLike } from '../src/api.js';
import type { SimulateResponse, SkeletonDoc } from '../src/types.js';

export function demoSkeleton(stories = 2): SkeletonDoc {
  const bars: SkeletonDoc['bars'] = [];
  const panels: SkeletonDoc['panels'] = [];
  const h = 16;
  for (let s = 1; s <= stories; s++) {
    const z0 = (s - 1) * h;
    const z1 = s * h;
    for (const [x, y] of [[0, 0], [30, 0], [30, 30], [0, 30]] as const) {
      bars.push({ p1: [x, y, z0], p2: [x, y, z1], kind: 'column', story: s });
    }
    bars.push({ p1: [0, 0, z1], p2: [30, 0, z1], kind: 'beam', story: s });
    bars.push({ p1: [30, 0, z1], p2: [30, 30, z1], kind: 'beam', story: s });
    bars.push({ p1: [0, 30, z1], p2: [30, 30, z1], kind: 'beam', story: s });
    bars.push({ p1: [0, 0, z1], p2: [0, 30, z1], kind: 'beam', story: s });
    panels.push({ story: s, x0: 0, y0: 0, x1: 30, y1: 30 });
  }
  return {
    stories,
    story_height: h,
    spans_x: [30],
    spans_y: [30],
    cells: [[0, 0]],
    bars,
    panels,
  };
}

export function cannedResult(
  overrides: Partial<SimulateResponse> = {},
): SimulateResponse {
  return {
    drift_x: [0.011, 0.008],
    drift_y: [0.0102, 0.0071],
    mass: 64123.5,
    violations: [],
    drift_limit: 0.015,
    source: 'surrogate',
    model_hash: 'abc123',
    sizer_hash: 'def456',
    config_hash: 'cfg789',
    ...overrides,
  };
}

export function mockTransport(
  handler: (url: string, init?: RequestInit) => { status?: number; body: unknown },
): FetchLike {
  return async (url, init) => {
    const { status = 200, body } = handler(url, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  };
}
