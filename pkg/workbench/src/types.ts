// Payload types for the evaluation service and the session log.

export interface BarDoc {
  p1: [number, number, number];
  p2: [number, number, number];
  kind: 'column' | 'beam';
  story: number;
}

export interface PanelDoc {
  story: number;
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface SkeletonDoc {
  stories: number;
  story_height: number;
  spans_x: number[];
  spans_y: number[];
  cells: [number, number][];
  bars: BarDoc[];
  panels: PanelDoc[];
}

export interface Violation {
  story: number;
  dir: 'x' | 'y';
  ratio: number;
  limit: number;
}

export interface SimulateResponse {
  drift_x: number[];
  drift_y: number[];
  mass: number;
  violations: Violation[];
  drift_limit: number;
  source: 'surrogate' | 'oracle';
  model_hash: string;
  sizer_hash: string;
  config_hash: string;
}

export interface SizeResponse {
  sections: number[];
  p_soft: number[][];
  model_hash: string;
  sizer_hash: string;
  config_hash: string;
}

export interface SkeletonResponse {
  skeleton: SkeletonDoc;
  seed: number;
  model_hash: string;
  config_hash: string;
}

export interface SectionInfo {
  index: number;
  name: string;
  kind: 'column' | 'beam';
  A: number;
  Ix: number;
  Iy: number;
  J: number;
  unit_weight: number;
}

export interface SectionsResponse {
  columns: SectionInfo[];
  beams: SectionInfo[];
}

// One evaluated design state; numbers are stored exactly as returned.
export interface Snapshot {
  label: string;
  assignment: number[];
  result: SimulateResponse;
}

// Session export row layout: mass tally, per-kind usage vectors sorted by
// descending strength, and per-story drift ratios in both directions.
export interface SessionExportRow {
  iteration: number;
  label: string;
  source: string;
  mass_lb: number;
  mass_tons: number;
  beam_usage: number[];
  column_usage: number[];
  drift_x: number[];
  drift_y: number[];
  drift_limit: number;
  violations: Violation[];
  variety: number;
}

export interface SessionExport {
  skeleton_seed: number | null;
  stories: number;
  n_bars: number;
  drift_limit: number;
  model_hash: string;
  config_hash: string;
  rows: SessionExportRow[];
}
