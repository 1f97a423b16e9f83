import { describe, expect, it } from 'vitest';

import { dashboardModel } from '../src/dashboard.js';
import { cannedResult } from './helpers.js';

describe('dashboard view-model', () => {
  it('flags stories over the limit in either direction', () => {
    const result = cannedResult({
      drift_x: [0.0161, 0.008],
      drift_y: [0.009, -0.0175],
      violations: [
        { story: 1, dir: 'x', ratio: 0.0161, limit: 0.015 },
        { story: 2, dir: 'y', ratio: -0.0175, limit: 0.015 },
      ],
    });
    const model = dashboardModel(result, 3);
    expect(model.storyBars[0]!.overX).toBe(true);
    expect(model.storyBars[0]!.overY).toBe(false);
    expect(model.storyBars[1]!.overY).toBe(true);
    expect(model.violationCount).toBe(2);
    expect(model.massTons).toBeCloseTo(result.mass / 2000, 12);
    expect(model.variety).toBe(3);
    expect(model.source).toBe('surrogate');
    expect(model.stale).toBe(false);
  });

  it('keeps magnitudes as fractions of the limit, capped', () => {
    const model = dashboardModel(cannedResult({
      drift_x: [0.045],
      drift_y: [0.0075],
    }), 1);
    expect(model.storyBars[0]!.xFrac).toBe(2); // capped
    expect(model.storyBars[0]!.yFrac).toBeCloseTo(0.5);
  });

  it('carries the stale marker through', () => {
    expect(dashboardModel(cannedResult(), 1, true).stale).toBe(true);
  });
});
