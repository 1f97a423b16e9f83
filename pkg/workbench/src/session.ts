// Session state: the loaded skeleton, the working assignment, and an
// append-only history of evaluated snapshots. Undo moves a cursor back
// through history without discarding anything, so the whole session can
// be exported (or restored) exactly.

import type {
  SessionExport,
  SessionExportRow,
  SimulateResponse,
  SkeletonDoc,
  Snapshot,
} from './types.js';

export const N_COLUMN_SECTIONS = 5;
export const N_BEAM_SECTIONS = 9;

export interface Selection {
  story?: number;
  kind?: 'column' | 'beam';
  bars?: number[];
}

export class Session {
  readonly skeleton: SkeletonDoc;
  readonly skeletonSeed: number | null;
  readonly driftLimit: number;
  assignment: number[];
  history: Snapshot[] = [];
  cursor = -1; // last applied snapshot
  modelHash = '';
  configHash = '';

  constructor(skeleton: SkeletonDoc, driftLimit: number,
              skeletonSeed: number | null = null) {
    this.skeleton = skeleton;
    this.driftLimit = driftLimit;
    this.skeletonSeed = skeletonSeed;
    this.assignment = skeleton.bars.map(() => 0);
  }

  barsMatching(sel: Selection): number[] {
    if (sel.bars) return [...sel.bars];
    const out: number[] = [];
    this.skeleton.bars.forEach((bar, i) => {
      if (sel.story !== undefined && bar.story !== sel.story) return;
      if (sel.kind !== undefined && bar.kind !== sel.kind) return;
      out.push(i);
    });
    return out;
  }

  /** Patch the working assignment; evaluation happens separately. */
  assign(sel: Selection, sectionIndex: number): number[] {
    for (const i of this.barsMatching(sel)) {
      const bar = this.skeleton.bars[i]!;
      const n = bar.kind === 'column' ? N_COLUMN_SECTIONS : N_BEAM_SECTIONS;
      if (sectionIndex < 0 || sectionIndex >= n) {
        throw new Error(`section ${sectionIndex} invalid for ${bar.kind}`);
      }
      this.assignment[i] = sectionIndex;
    }
    return [...this.assignment];
  }

  setAssignment(assignment: number[]): void {
    if (assignment.length !== this.skeleton.bars.length) {
      throw new Error('assignment length mismatch');
    }
    this.assignment = [...assignment];
  }

  /** Record an evaluated snapshot; numbers are retained exactly as given. */
  record(label: string, result: SimulateResponse): Snapshot {
    const snap: Snapshot = {
      label,
      assignment: [...this.assignment],
      result,
    };
    this.history.push(snap);
    this.cursor = this.history.length - 1;
    this.modelHash = result.model_hash;
    this.configHash = result.config_hash;
    return snap;
  }

  current(): Snapshot | null {
    return this.cursor >= 0 ? this.history[this.cursor]! : null;
  }

  /** Step the cursor back one snapshot and restore its assignment. */
  undo(): Snapshot | null {
    if (this.cursor <= 0) return null;
    this.cursor -= 1;
    const snap = this.history[this.cursor]!;
    this.assignment = [...snap.assignment];
    return snap;
  }

  /** Distinct section slots in use (the variety constraint's accounting:
   * columns and beams share the 9-slot index space). */
  varietyCount(assignment: number[] = this.assignment): number {
    return new Set(assignment).size;
  }

  usage(assignment: number[], kind: 'column' | 'beam'): number[] {
    const n = kind === 'column' ? N_COLUMN_SECTIONS : N_BEAM_SECTIONS;
    const counts = new Array<number>(n).fill(0);
    this.skeleton.bars.forEach((bar, i) => {
      if (bar.kind === kind) counts[assignment[i]!]! += 1;
    });
    // report strongest-first, matching the design-review table convention
    return counts.reverse();
  }

  export(): SessionExport {
    const rows: SessionExportRow[] = this.history
      .slice(0, this.cursor + 1)
      .map((snap, i) => ({
        iteration: i + 1,
        label: snap.label,
        source: snap.result.source,
        mass_lb: snap.result.mass,
        mass_tons: snap.result.mass / 2000,
        beam_usage: this.usage(snap.assignment, 'beam'),
        column_usage: this.usage(snap.assignment, 'column'),
        drift_x: snap.result.drift_x,
        drift_y: snap.result.drift_y,
        drift_limit: snap.result.drift_limit,
        violations: snap.result.violations,
        variety: this.varietyCount(snap.assignment),
      }));
    return {
      skeleton_seed: this.skeletonSeed,
      stories: this.skeleton.stories,
      n_bars: this.skeleton.bars.length,
      drift_limit: this.driftLimit,
      model_hash: this.modelHash,
      config_hash: this.configHash,
      rows,
    };
  }

  /** Rebuild a session from its serialized form (state round trip). */
  static restore(doc: {
    skeleton: SkeletonDoc;
    driftLimit: number;
    skeletonSeed: number | null;
    assignment: number[];
    history: Snapshot[];
    cursor: number;
  }): Session {
    const s = new Session(doc.skeleton, doc.driftLimit, doc.skeletonSeed);
    s.assignment = [...doc.assignment];
    s.history = doc.history.map((h) => ({ ...h, assignment: [...h.assignment] }));
    s.cursor = doc.cursor;
    const cur = s.current();
    if (cur) {
      s.modelHash = cur.result.model_hash;
      s.configHash = cur.result.config_hash;
    }
    return s;
  }

  serialize(): string {
    return JSON.stringify({
      skeleton: this.skeleton,
      driftLimit: this.driftLimit,
      skeletonSeed: this.skeletonSeed,
      assignment: this.assignment,
      history: this.history,
      cursor: this.cursor,
    });
  }
}
