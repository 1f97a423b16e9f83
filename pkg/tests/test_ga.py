"""Genetic optimizer: operators, invariants, seeding, metrics."""

import numpy as np
import pytest
from scipy.stats import spearmanr

from gridsizer.ga import (GAConfig, OracleEvaluator, SurrogateEvaluator,
                          gene_bounds, random_population, run_ga,
                          seed_population, seeding_metrics, step)
from gridsizer.sections import BEAM
from gridsizer.skeleton import SkeletonConfig, sample_skeleton
from tests.conftest import FIXTURE_LM, FIXTURE_SKELETONS

SMALL_SK = sample_skeleton(42, SkeletonConfig(base_range=(60.0, 90.0),
                                              story_range=(2, 2)))


class StubEvaluator:
    """Deterministic fitness for engine-level tests: prefers small genes."""

    tag = "stub"

    def __call__(self, genes_batch):
        return genes_batch.sum(axis=1).astype(float)


def test_lightest_cheaper_than_heaviest():
    cfg = GAConfig(iterations=0)
    ev = OracleEvaluator(SMALL_SK, FIXTURE_LM, cfg)
    bounds = gene_bounds(SMALL_SK)
    light = np.zeros((1, SMALL_SK.n_bars), dtype=np.int64)
    heavy = (bounds - 1)[None, :]
    l_light, l_heavy = ev(light)[0], ev(heavy)[0]
    from gridsizer.ga import loss_terms
    from gridsizer.frame import solve
    res = solve(SMALL_SK, light[0], FIXTURE_LM)
    drifts = np.column_stack([res.drift_x, res.drift_y])
    obj_light = loss_terms(SMALL_SK, light[0], drifts, cfg)[0]
    res_h = solve(SMALL_SK, heavy[0], FIXTURE_LM)
    drifts_h = np.column_stack([res_h.drift_x, res_h.drift_y])
    obj_heavy = loss_terms(SMALL_SK, heavy[0], drifts_h, cfg)[0]
    assert obj_light < obj_heavy


def test_evaluator_purity():
    cfg = GAConfig()
    ev = OracleEvaluator(SMALL_SK, FIXTURE_LM, cfg)
    genes = random_population(SMALL_SK, 3, np.random.default_rng(0))
    twice = np.vstack([genes, genes])
    losses = ev(twice)
    assert np.array_equal(losses[:3], losses[3:])


def test_surrogate_oracle_rank_correlation(small_surrogate):
    surrogate, _, _ = small_surrogate
    cfg = GAConfig()
    oracle_ev = OracleEvaluator(SMALL_SK, FIXTURE_LM, cfg)
    sur_ev = SurrogateEvaluator(SMALL_SK, surrogate, cfg)
    genes = random_population(SMALL_SK, 50, np.random.default_rng(3))
    rho = spearmanr(oracle_ev(genes), sur_ev(genes)).statistic
    assert rho > 0.8


def test_degenerate_rates_copy_tournament_winners():
    cfg = GAConfig(crossover_rate=0.0, mutation_rate=0.0, population=20,
                   elites=2)
    rng = np.random.default_rng(0)
    pop = random_population(SMALL_SK, 20, rng)
    losses = StubEvaluator()(pop)
    nxt = step(pop, losses, gene_bounds(SMALL_SK), cfg, rng)
    pop_rows = {tuple(row) for row in pop}
    assert all(tuple(row) in pop_rows for row in nxt)


def test_elitism_trace_nonincreasing():
    cfg = GAConfig(population=30, elites=3, iterations=25)
    run = run_ga(SMALL_SK, StubEvaluator(), cfg, seed=1)
    trace = run.trace
    assert len(trace) == 26
    assert all(b <= a for a, b in zip(trace, trace[1:]))


def test_full_run_deterministic(small_surrogate):
    surrogate, _, _ = small_surrogate
    cfg = GAConfig(population=20, elites=2, iterations=5)
    ev = SurrogateEvaluator(SMALL_SK, surrogate, cfg)
    r1 = run_ga(SMALL_SK, ev, cfg, seed=9)
    r2 = run_ga(SMALL_SK, ev, cfg, seed=9)
    assert r1.trace == r2.trace
    assert np.array_equal(r1.best_genes, r2.best_genes)


def test_mutation_rate_one_agreement_near_uniform():
    cfg = GAConfig(crossover_rate=0.0, mutation_rate=1.0, population=300,
                   elites=0)
    sk = SMALL_SK
    rng = np.random.default_rng(7)
    parent = np.zeros(sk.n_bars, dtype=np.int64)
    pop = np.tile(parent, (300, 1))
    losses = np.zeros(300)  # all equal: tournament returns copies of parent
    children = step(pop, losses, gene_bounds(sk), cfg, rng)
    is_beam = np.array([b.kind == BEAM for b in sk.bars])
    beam_agree = (children[:, is_beam] == 0).mean()
    col_agree = (children[:, ~is_beam] == 0).mean()
    assert abs(beam_agree - 1 / 9) < 0.02
    assert abs(col_agree - 1 / 5) < 0.03


def test_seed_population_strategies():
    rng = np.random.default_rng(0)
    n_bars = SMALL_SK.n_bars
    p_soft = np.random.default_rng(1).dirichlet(np.ones(9), size=n_bars)
    best = seed_population("best_seed", SMALL_SK, 100, rng, p_soft)
    assert np.all(best == best[0])
    assert np.array_equal(best[0], np.argmax(p_soft, axis=1))
    # one-hot probabilities make sampling degenerate to the best seed
    onehot = np.zeros((n_bars, 9))
    onehot[np.arange(n_bars), np.argmax(p_soft, axis=1)] = 1.0
    sampled = seed_population("sampled_seeds", SMALL_SK, 50, rng, onehot)
    assert np.all(sampled == np.argmax(p_soft, axis=1))
    with pytest.raises(ValueError, match="probabilities"):
        seed_population("best_seed", SMALL_SK, 10, rng, None)
    with pytest.raises(ValueError, match="strategy"):
        seed_population("bogus", SMALL_SK, 10, rng, p_soft)


def test_sampled_seed_frequencies_match_probabilities():
    rng = np.random.default_rng(5)
    n_bars = SMALL_SK.n_bars
    p_soft = np.random.default_rng(2).dirichlet(np.ones(9) * 2, size=n_bars)
    pop = seed_population("sampled_seeds", SMALL_SK, 400, rng, p_soft)
    for slot in range(9):
        observed = (pop == slot).mean()
        expected = p_soft[:, slot].mean()
        assert abs(observed - expected) < 0.03


def test_seeding_metrics_examples():
    m = seeding_metrics([10.0, 8.0, 5.0], [2.0, 1.9, 1.8])
    assert m["M1"] == pytest.approx(1.6)
    assert m["M3"] == 0
    m2 = seeding_metrics([10.0, 5.0], [6.0, 5.0])
    assert m2["M2"] == pytest.approx(0.0)
    # constructed crossing at iteration 37
    rand = [10.0] + [5.0] * 99
    seeded = [6.0] * 37 + [4.9] + [4.8] * 62
    m3 = seeding_metrics(rand, seeded)
    assert m3["M3"] == 37
    with pytest.raises(ValueError):
        seeding_metrics([], [1.0])


def test_metrics_division_guard():
    m = seeding_metrics([5.0, 5.0], [4.0, 4.0])
    assert m["M1"] is None
    assert m["M3"] == 0


def test_run_artifact_round_trip():
    cfg = GAConfig(population=10, elites=1, iterations=3)
    run = run_ga(SMALL_SK, StubEvaluator(), cfg, seed=2)
    doc = run.to_dict()
    assert doc["evaluator"] == "stub"
    assert len(doc["trace"]) == 4
    assert len(doc["best_genes"]) == SMALL_SK.n_bars
    assert doc["skeleton_hash"] == run.skeleton_hash
