// Dashboard view-model: everything displayed derives from the latest
// snapshot, and every number carries its evaluator source tag.

import type { SimulateResponse } from './types.js';

export interface StoryBar {
  story: number;
  x: number;
  y: number;
  overX: boolean;
  overY: boolean;
  xFrac: number; // |ratio| / limit, capped at 2 for bar widths
  yFrac: number;
}

export interface DashboardModel {
  storyBars: StoryBar[];
  massLb: number;
  massTons: number;
  variety: number;
  violationCount: number;
  source: string;
  modelHash: string;
  stale: boolean;
}

export function dashboardModel(
  result: SimulateResponse,
  variety: number,
  stale = false,
): DashboardModel {
  const lim = result.drift_limit;
  const storyBars = result.drift_x.map((x, k) => {
    const y = result.drift_y[k]!;
    return {
      story: k + 1,
      x,
      y,
      overX: Math.abs(x) > lim,
      overY: Math.abs(y) > lim,
      xFrac: Math.min(Math.abs(x) / lim, 2),
      yFrac: Math.min(Math.abs(y) / lim, 2),
    };
  });
  return {
    storyBars,
    massLb: result.mass,
    massTons: result.mass / 2000,
    variety,
    violationCount: result.violations.length,
    source: result.source,
    modelHash: result.model_hash,
    stale,
  };
}
