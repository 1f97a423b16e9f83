// DOM wiring for the sizing workbench. Evaluations are debounced and
// latest-wins: edits made while a request is in flight abort it, and a
// stale banner shows whenever the displayed numbers predate the current
// assignment (e.g. the service is unreachable).

import { ApiClient, ApiError } from './api.js';
import { dashboardModel } from './dashboard.js';
import { buildDrawList, fitScale, paint, type ViewParams } from './render.js';
import { Session, type Selection } from './session.js';
import type { SectionsResponse } from './types.js';

const DEBOUNCE_MS = 150;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class Workbench {
  api = new ApiClient(
    (window as unknown as { API_URL?: string }).API_URL ??
      `${location.protocol}//${location.hostname}:8777`,
  );
  session: Session | null = null;
  sections: SectionsResponse | null = null;
  selection: Selection = {};
  view = { yaw: 0.8, pitch: 0.6 };
  private debounceTimer: number | undefined;
  private inflight: AbortController | null = null;

  canvas = el<HTMLCanvasElement>('viewport');
  status = el<HTMLDivElement>('status');
  dashboard = el<HTMLDivElement>('dashboard');

  async start(): Promise<void> {
    this.sections = await this.api.sections();
    const kindSel = el<HTMLSelectElement>('section-pick');
    const fill = () => {
      const kind = (el<HTMLSelectElement>('kind-pick').value || 'column') as
        'column' | 'beam';
      const lib = kind === 'column' ? this.sections!.columns
                                    : this.sections!.beams;
      kindSel.innerHTML = lib
        .map((s) => `<option value="${s.index}">${s.name}</option>`)
        .join('');
    };
    el<HTMLSelectElement>('kind-pick').addEventListener('change', fill);
    fill();

    el<HTMLButtonElement>('load').addEventListener('click', () => {
      void this.loadSkeleton();
    });
    el<HTMLButtonElement>('suggest').addEventListener('click', () => {
      void this.suggest();
    });
    el<HTMLButtonElement>('apply').addEventListener('click', () => {
      this.applySelection();
    });
    el<HTMLButtonElement>('undo').addEventListener('click', () => {
      this.undo();
    });
    el<HTMLButtonElement>('export').addEventListener('click', () => {
      this.download();
    });
    this.canvas.addEventListener('mousedown', (ev) => this.drag(ev));
    this.note('ready; load a skeleton');
  }

  note(text: string, bad = false): void {
    this.status.textContent = text;
    this.status.className = bad ? 'status bad' : 'status';
  }

  async loadSkeleton(): Promise<void> {
    const seed = Number(el<HTMLInputElement>('seed').value || '11');
    const stories = Number(el<HTMLInputElement>('stories').value || '2');
    try {
      const res = await this.api.skeleton(seed, stories);
      const probe = await this.api.simulate(
        res.skeleton, res.skeleton.bars.map(() => 0));
      this.session = new Session(res.skeleton, probe.drift_limit, seed);
      this.session.record('initial (lightest everywhere)', probe);
      this.note(`skeleton ${seed}: ${res.skeleton.bars.length} bars, `
        + `${res.skeleton.stories} stories`);
      this.redraw();
      this.renderDashboard(false);
    } catch (err) {
      this.note(this.describe(err), true);
    }
  }

  async suggest(): Promise<void> {
    if (!this.session) return;
    try {
      const res = await this.api.size(this.session.skeleton);
      this.session.setAssignment(res.sections);
      this.scheduleEvaluate('suggested design');
      this.redraw();
    } catch (err) {
      this.note(this.describe(err), true);
    }
  }

  applySelection(): void {
    if (!this.session) return;
    const kind = el<HTMLSelectElement>('kind-pick').value as 'column' | 'beam';
    const story = Number(el<HTMLInputElement>('story-pick').value || '0');
    const index = Number(el<HTMLSelectElement>('section-pick').value || '0');
    const sel: Selection = { kind };
    if (story > 0) sel.story = story;
    this.selection = sel;
    this.session.assign(sel, index);
    this.scheduleEvaluate(
      `${kind}s${story > 0 ? ` story ${story}` : ''} -> index ${index}`);
    this.redraw();
  }

  undo(): void {
    if (!this.session) return;
    const snap = this.session.undo();
    if (snap) {
      this.note(`undid to: ${snap.label}`);
      this.redraw();
      this.renderDashboard(false);
    }
  }

  scheduleEvaluate(label: string): void {
    window.clearTimeout(this.debounceTimer);
    this.renderDashboard(true);
    this.debounceTimer = window.setTimeout(() => {
      void this.evaluate(label);
    }, DEBOUNCE_MS);
  }

  async evaluate(label: string): Promise<void> {
    if (!this.session) return;
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const result = await this.api.simulate(
        this.session.skeleton, this.session.assignment, 'surrogate',
        controller.signal);
      if (controller.signal.aborted) return;
      this.session.record(label, result);
      this.renderDashboard(false);
      this.note(label);
    } catch (err) {
      if (!controller.signal.aborted) {
        this.renderDashboard(true);
        this.note(`evaluation queued, service unreachable: `
          + `${this.describe(err)}`, true);
      }
    }
  }

  renderDashboard(stale: boolean): void {
    if (!this.session) return;
    const snap = this.session.current();
    if (!snap) return;
    const model = dashboardModel(
      snap.result, this.session.varietyCount(), stale);
    const bars = model.storyBars
      .map((b) => {
        const row = (v: number, frac: number, over: boolean, tag: string) =>
          `<div class="bar ${over ? 'over' : ''}" `
          + `style="width:${(frac * 50).toFixed(1)}%">`
          + `${tag}${v.toExponential(2)}</div>`;
        return `<div class="story">story ${b.story}`
          + row(b.x, b.xFrac, b.overX, 'X ')
          + row(b.y, b.yFrac, b.overY, 'Y ')
          + `</div>`;
      })
      .join('');
    this.dashboard.innerHTML = `
      <div class="tally ${model.stale ? 'stale' : ''}">
        <span>mass ${model.massTons.toFixed(2)} tons</span>
        <span>variety ${model.variety}</span>
        <span>violations ${model.violationCount}</span>
        <span class="tag">${model.source}${model.stale ? ' (stale)' : ''}</span>
      </div>${bars}`;
  }

  redraw(): void {
    if (!this.session) return;
    const ctx = this.canvas.getContext('2d');
    const view: ViewParams = {
      yaw: this.view.yaw,
      pitch: this.view.pitch,
      scale: fitScale(this.session.skeleton, this.canvas.width,
                      this.canvas.height),
      width: this.canvas.width,
      height: this.canvas.height,
    };
    const selected = new Set(this.session.barsMatching(this.selection));
    const lines = buildDrawList(this.session.skeleton,
                                this.session.assignment, selected, view);
    if (ctx) paint(ctx, lines);
  }

  drag(down: MouseEvent): void {
    const start = { x: down.clientX, y: down.clientY, ...this.view };
    const move = (ev: MouseEvent) => {
      this.view.yaw = start.yaw + (ev.clientX - start.x) * 0.01;
      this.view.pitch = Math.max(
        0, Math.min(1.4, start.pitch + (ev.clientY - start.y) * 0.01));
      this.redraw();
    };
    const up = () => {
      window.removeEventListener('mousemove', move);
      window.removeEventListener('mouseup', up);
    };
    window.addEventListener('mousemove', move);
    window.addEventListener('mouseup', up);
  }

  download(): void {
    if (!this.session) return;
    const blob = new Blob([JSON.stringify(this.session.export(), null, 1)],
                          { type: 'application/json' });
    const a = document.createElement('a');
    a.href = URL.createObjectURL(blob);
    a.download = 'session.json';
    a.click();
    URL.revokeObjectURL(a.href);
  }

  private describe(err: unknown): string {
    if (err instanceof ApiError) return `service error ${err.status}`;
    return err instanceof Error ? err.message : String(err);
  }
}

new Workbench().start().catch((err) => {
  document.getElementById('status')!.textContent =
    `failed to reach the evaluation service: ${err}`;
});
