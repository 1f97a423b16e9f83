// Scripted session: load demo skeleton -> suggest -> two manual edits ->
// export. The unit half runs against a canned transport; the integration
// half drives a live evaluation service when one is reachable (set
// WORKBENCH_API, default http://127.0.0.1:8777) and checks that every
// exported number matches a direct /api/simulate replay bit-exactly.

import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { runScriptedSession } from '../src/scripted.js';
import type { SessionExportRow } from '../src/types.js';
import { cannedResult, demoSkeleton, mockTransport } from './helpers.js';

const ROW_KEYS: (keyof SessionExportRow)[] = [
  'iteration', 'label', 'source', 'mass_lb', 'mass_tons', 'beam_usage',
  'column_usage', 'drift_x', 'drift_y', 'drift_limit', 'violations',
  'variety',
];

describe('scripted session (canned service)', () => {
  it('produces the review-table schema and passes numbers through', async () => {
    const sk = demoSkeleton(2);
    let call = 0;
    const api = new ApiClient('http://svc', mockTransport((url, init) => {
      if (url.includes('/api/skeleton')) {
        return { body: { skeleton: sk, seed: 11 } };
      }
      if (url.includes('/api/size')) {
        return { body: { sections: sk.bars.map((b) =>
          b.kind === 'column' ? 2 : 5 ), p_soft: [] } };
      }
      call += 1;
      const body = JSON.parse(String(init?.body));
      return { body: cannedResult({
        mass: 50000 + call * 1000.0625,
        drift_x: [0.01 + call * 1e-4, 0.007],
        drift_y: [0.009, 0.006],
      }) };
    }));
    const { export: doc } = await runScriptedSession(api, 11, 2);
    expect(doc.rows).toHaveLength(3);
    expect(doc.rows.map((r) => r.label)).toEqual([
      'suggested design',
      'story-1 columns to strongest',
      'all beams to mid section',
    ]);
    for (const row of doc.rows) {
      for (const key of ROW_KEYS) expect(row).toHaveProperty(key);
      expect(row.beam_usage).toHaveLength(9);
      expect(row.column_usage).toHaveLength(5);
      expect(row.drift_x).toHaveLength(2);
    }
    // exact passthrough of the service's floats
    expect(doc.rows[0]!.mass_lb).toBe(50000 + 2 * 1000.0625);
    expect(doc.rows[0]!.drift_x[0]).toBe(0.01 + 2 * 1e-4);
  });
});

const BASE = process.env.WORKBENCH_API ?? 'http://127.0.0.1:8777';

async function serviceUp(): Promise<boolean> {
  try {
    const res = await fetch(`${BASE}/api/sections`);
    return res.ok;
  } catch {
    return false;
  }
}

describe('scripted session (live service)', async () => {
  const up = await serviceUp();
  it.skipIf(!up)('exported numbers replay bit-exactly', async () => {
    const api = new ApiClient(BASE);
    const { session, export: doc } = await runScriptedSession(api, 11, 2);
    expect(doc.rows).toHaveLength(3);
    expect(doc.model_hash).not.toBe('');
    for (const [i, row] of doc.rows.entries()) {
      const snap = session.history[i]!;
      const replay = await api.simulate(session.skeleton, snap.assignment);
      expect(row.drift_x).toEqual(replay.drift_x);
      expect(row.drift_y).toEqual(replay.drift_y);
      expect(row.mass_lb).toBe(replay.mass);
      expect(row.violations).toEqual(replay.violations);
      expect(row.mass_tons).toBe(replay.mass / 2000);
    }
    // manual edits landed in the assignments
    const colIdx = session.skeleton.bars
      .map((b, i) => ({ b, i }))
      .filter(({ b }) => b.kind === 'column' && b.story === 1)
      .map(({ i }) => i);
    for (const i of colIdx) {
      expect(session.history[1]!.assignment[i]).toBe(4);
    }
  });
});
