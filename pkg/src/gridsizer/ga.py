"""Genetic optimizer for per-bar section indices.

Population of 100, five elites pass unchanged, the rest come from
binary-tournament selection, uniform crossover (single-point available)
and per-gene mutation. The evaluator is pluggable: the frame oracle or
the frozen drift surrogate (batched through one packed forward pass).
Fitness uses fixed weights: w0*mass_per_bar + w_drift*l_dr +
w_variety*l_var; the entropy term is omitted because a deterministic
chromosome has no output distribution to regularize.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .frame import resolve_sections, solve, total_mass
from .graph import to_graph
from .loads import LoadModel
from .sections import BEAM, N_BEAM_SECTIONS, N_COLUMN_SECTIONS
from .skeleton import Skeleton, skeleton_to_dict
from .surrogate import DriftSurrogate


@dataclass
class GAConfig:
    population: int = 100
    elites: int = 5
    crossover_rate: float = 0.9
    mutation_rate: float = 0.01
    iterations: int = 1000
    crossover: str = "uniform"  # or "single_point"
    objective_weight: float = 1.0
    w_drift: float = 1e3
    w_variety: float = 1.0
    drift_limit: float = 0.015


def skeleton_hash(sk: Skeleton) -> str:
    doc = json.dumps(skeleton_to_dict(sk), sort_keys=True)
    return hashlib.sha256(doc.encode()).hexdigest()[:16]


def gene_bounds(sk: Skeleton) -> np.ndarray:
    return np.array([N_BEAM_SECTIONS if b.kind == BEAM else N_COLUMN_SECTIONS
                     for b in sk.bars])


def loss_terms(sk: Skeleton, genes: np.ndarray, drifts: np.ndarray,
               cfg: GAConfig) -> tuple[float, float, float]:
    """(mass tons/bar, drift excess, variety) for one chromosome."""
    obj = total_mass(sk, resolve_sections(sk, genes)) / 2000.0 / sk.n_bars
    x = np.abs(drifts) - cfg.drift_limit
    l_dr = float(np.where(x > 0, x, 0.01 * x).mean())
    usage = np.bincount(genes, minlength=9)
    p = usage / usage.sum()
    l_var = float(1.0 - np.sort(p)[::-1][:6].sum())
    return float(obj), l_dr, l_var


def chromosome_loss(sk: Skeleton, genes: np.ndarray, drifts: np.ndarray,
                    cfg: GAConfig) -> float:
    obj, l_dr, l_var = loss_terms(sk, genes, drifts, cfg)
    return cfg.objective_weight * obj + cfg.w_drift * l_dr + cfg.w_variety * l_var


class OracleEvaluator:
    """Exact fitness through the frame solver."""

    tag = "oracle"

    def __init__(self, sk: Skeleton, lm: LoadModel, cfg: GAConfig):
        self.sk, self.lm, self.cfg = sk, lm, cfg

    def __call__(self, genes_batch: np.ndarray) -> np.ndarray:
        out = np.empty(len(genes_batch))
        for i, genes in enumerate(genes_batch):
            try:
                res = solve(self.sk, genes, self.lm)
            except Exception as exc:
                raise RuntimeError(f"evaluator failed on chromosome {i}: {exc}"
                                   ) from exc
            drifts = np.column_stack([res.drift_x, res.drift_y])
            out[i] = chromosome_loss(self.sk, genes, drifts, self.cfg)
        return out


class SurrogateEvaluator:
    """Fitness through the frozen surrogate, batched per forward pass."""

    tag = "surrogate"

    def __init__(self, sk: Skeleton, surrogate: DriftSurrogate, cfg: GAConfig,
                 chunk_nodes: int = 40_000):
        self.sk, self.surrogate, self.cfg = sk, surrogate, cfg
        self.scale = float(surrogate.params.meta["drift_scale"])
        self.chunk = max(1, chunk_nodes // (sk.n_bars + 1))

    def __call__(self, genes_batch: np.ndarray) -> np.ndarray:
        out = np.empty(len(genes_batch))
        for lo in range(0, len(genes_batch), self.chunk):
            chunk = genes_batch[lo:lo + self.chunk]
            graphs = [to_graph(self.sk, g) for g in chunk]
            preds = self.surrogate.predict(graphs)
            for i, (genes, pred) in enumerate(zip(chunk, preds)):
                drifts = pred.h * self.scale
                out[lo + i] = chromosome_loss(self.sk, genes, drifts, self.cfg)
        return out


# ----------------------------------------------------------------- engine

def random_population(sk: Skeleton, n: int,
                      rng: np.random.Generator) -> np.ndarray:
    bounds = gene_bounds(sk)
    return (rng.random((n, sk.n_bars)) * bounds).astype(np.int64)


def seed_population(strategy: str, sk: Skeleton, n: int,
                    rng: np.random.Generator,
                    p_soft: np.ndarray | None = None) -> np.ndarray:
    if strategy == "random":
        return random_population(sk, n, rng)
    if p_soft is None:
        raise ValueError(f"{strategy} seeding requires sizing probabilities")
    if strategy == "best_seed":
        best = np.argmax(p_soft, axis=1)
        return np.tile(best, (n, 1))
    if strategy == "sampled_seeds":
        cum = np.cumsum(p_soft, axis=1)
        cum /= cum[:, -1:]
        u = rng.random((n, len(p_soft)))
        genes = np.empty((n, len(p_soft)), dtype=np.int64)
        for j in range(len(p_soft)):
            genes[:, j] = np.searchsorted(cum[j], u[:, j])
        return genes
    raise ValueError(f"unknown seeding strategy: {strategy}")


def _tournament(losses: np.ndarray, rng: np.random.Generator) -> int:
    a, b = rng.integers(len(losses), size=2)
    return int(a if losses[a] <= losses[b] else b)


def step(population: np.ndarray, losses: np.ndarray, bounds: np.ndarray,
         cfg: GAConfig, rng: np.random.Generator) -> np.ndarray:
    """One generation: elites, tournament selection, crossover, mutation."""
    order = np.argsort(losses, kind="stable")
    next_pop = [population[i].copy() for i in order[:cfg.elites]]
    n_genes = population.shape[1]
    while len(next_pop) < cfg.population:
        first = population[_tournament(losses, rng)]
        if rng.random() < cfg.crossover_rate:
            second = population[_tournament(losses, rng)]
            if cfg.crossover == "uniform":
                take = rng.random(n_genes) < 0.5
                child = np.where(take, first, second)
            else:
                cut = int(rng.integers(1, n_genes)) if n_genes > 1 else 0
                child = np.concatenate([first[:cut], second[cut:]])
        else:
            child = first.copy()
        mutate = rng.random(n_genes) < cfg.mutation_rate
        if mutate.any():
            child = child.copy()
            fresh = (rng.random(n_genes) * bounds).astype(np.int64)
            child[mutate] = fresh[mutate]
        next_pop.append(child)
    return np.asarray(next_pop)


@dataclass
class GARun:
    config: GAConfig
    seed: int
    strategy: str
    evaluator: str
    skeleton_hash: str
    trace: list[float] = field(default_factory=list)
    best_genes: np.ndarray | None = None
    best_loss: float = float("inf")

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "seed": self.seed,
            "strategy": self.strategy,
            "evaluator": self.evaluator,
            "skeleton_hash": self.skeleton_hash,
            "trace": [float(v) for v in self.trace],
            "best_genes": [int(g) for g in self.best_genes],
            "best_loss": float(self.best_loss),
        }


def run_ga(sk: Skeleton, evaluator, cfg: GAConfig, seed: int,
           strategy: str = "random",
           p_soft: np.ndarray | None = None) -> GARun:
    rng = np.random.default_rng(seed)
    bounds = gene_bounds(sk)
    population = seed_population(strategy, sk, cfg.population, rng, p_soft)
    run = GARun(config=cfg, seed=seed, strategy=strategy,
                evaluator=evaluator.tag, skeleton_hash=skeleton_hash(sk))
    losses = evaluator(population)
    best = int(np.argmin(losses))
    run.best_loss = float(losses[best])
    run.best_genes = population[best].copy()
    run.trace.append(run.best_loss)
    for _ in range(cfg.iterations):
        population = step(population, losses, bounds, cfg, rng)
        losses = evaluator(population)
        best = int(np.argmin(losses))
        if losses[best] < run.best_loss:
            run.best_loss = float(losses[best])
            run.best_genes = population[best].copy()
        run.trace.append(run.best_loss)
    return run


# ---------------------------------------------------------------- metrics

def seeding_metrics(rand_trace: list[float],
                    seeded_trace: list[float]) -> dict:
    """M1: initial-improvement share, M2: final-improvement share, M3:
    first iteration beating the random run's final loss (0 at start)."""
    if not rand_trace or not seeded_trace:
        raise ValueError("empty trace")
    rand_start, rand_end = rand_trace[0], rand_trace[-1]
    sizer_start, sizer_end = seeded_trace[0], seeded_trace[-1]
    denom = rand_start - rand_end
    m1 = (rand_start - sizer_start) / denom if denom != 0 else None
    m2 = (rand_end - sizer_end) / rand_end if rand_end != 0 else None
    m3 = None
    for t, v in enumerate(seeded_trace):
        if v < rand_end:
            m3 = t
            break
    return {"M1": m1, "M2": m2, "M3": m3}
