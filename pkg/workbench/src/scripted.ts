// Scripted design session: load a demo skeleton, apply the automatic
// sizing suggestion, make two manual group edits, evaluate after each
// decision, and export the session log. Used by the integration test and
// as the workbench's self-check.

import type { ApiClient } from './api.js';
import { Session } from './session.js';
import type { SessionExport } from './types.js';

export interface ScriptedResult {
  session: Session;
  export: SessionExport;
}

export async function runScriptedSession(
  api: ApiClient,
  seed = 11,
  stories = 2,
): Promise<ScriptedResult> {
  const { skeleton } = await api.skeleton(seed, stories);
  const first = await api.simulate(skeleton, skeleton.bars.map(() => 0));
  const session = new Session(skeleton, first.drift_limit, seed);

  // iteration 1: the sizing network's proposal
  const suggestion = await api.size(skeleton);
  session.setAssignment(suggestion.sections);
  session.record('suggested design',
                 await api.simulate(skeleton, session.assignment));

  // iteration 2: strengthen the first-story columns
  session.assign({ story: 1, kind: 'column' }, 4);
  session.record('story-1 columns to strongest',
                 await api.simulate(skeleton, session.assignment));

  // iteration 3: mid-weight beams everywhere
  session.assign({ kind: 'beam' }, 4);
  session.record('all beams to mid section',
                 await api.simulate(skeleton, session.assignment));

  return { session, export: session.export() };
}
