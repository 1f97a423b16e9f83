"""Load model: panel distribution, elementary cases, lateral forces."""

import numpy as np
import pytest

from gridsizer.loads import (LoadModel, build_gravity_cases,
                             distribute_base_shear,
                             equivalent_lateral_forces, panel_edge_shares,
                             site_coefficient_fa, story_seismic_weights,
                             tributary_areas)
from gridsizer.sections import BEAM, COLUMN
from gridsizer.skeleton import (Bar, Panel, Skeleton, SkeletonConfig,
                                assign_random_sections, sample_skeleton)
from gridsizer.frame import resolve_sections


def single_panel_skeleton(dx=30.0, dy=30.0, stories=1):
    """Hand-built one-cell skeleton with explicit panel dimensions."""
    h = 16.0
    bars = []
    for s in range(1, stories + 1):
        z0, z1 = (s - 1) * h, s * h
        for x, y in ((0, 0), (dx, 0), (dx, dy), (0, dy)):
            bars.append(Bar((float(x), float(y), z0),
                            (float(x), float(y), z1), COLUMN, s))
        bars += [
            Bar((0.0, 0.0, z1), (dx, 0.0, z1), BEAM, s),
            Bar((dx, 0.0, z1), (dx, dy, z1), BEAM, s),
            Bar((0.0, dy, z1), (dx, dy, z1), BEAM, s),
            Bar((0.0, 0.0, z1), (0.0, dy, z1), BEAM, s),
        ]
    panels = tuple(Panel(s, 0.0, 0.0, dx, dy) for s in range(1, stories + 1))
    return Skeleton(tuple(bars), stories, h, (dx,), (dy,), ((0, 0),), panels)


def test_panel_share_fractions_sum_to_one():
    shares = panel_edge_shares(Panel(1, 0, 0, 40, 30), 16.0)
    assert sum(s for _, s, _ in shares) == pytest.approx(1.0)
    long_edges = [e for e, s, is_long in shares if is_long]
    # longer dimension is x: the y=const edges carry the joists
    for (p1, p2) in long_edges:
        assert p1[1] == p2[1]


def test_panel_live_load_conservation_and_split():
    sk = single_panel_skeleton(30.0, 30.0)
    lm = LoadModel()
    sections = resolve_sections(sk, assign_random_sections(sk, 0))
    cases = build_gravity_cases(sk, sections, lm)
    live = cases["roof_live"] if sk.stories == 1 else cases["live"]
    # one story: the only panel is the roof, loaded at 20 psf
    assert live.total(sk.bars) == pytest.approx(20.0 * 900.0, rel=1e-12)
    # six joist endpoint loads plus two direct line shares
    n_points = sum(len(v) for v in live.points.values())
    assert n_points == 6
    assert len(live.line) == 2
    per_point = 20.0 * 900.0 / 8
    for pts in live.points.values():
        assert [f for f, _ in pts] == [0.25, 0.5, 0.75]
        for _, p in pts:
            assert p == pytest.approx(per_point)


def test_full_intensity_panel_split_90k():
    sk = single_panel_skeleton(30.0, 30.0, stories=2)
    lm = LoadModel()
    sections = resolve_sections(sk, assign_random_sections(sk, 0))
    cases = build_gravity_cases(sk, sections, lm)
    # story-1 panel is not the roof: live 100 psf over 900 ft^2 = 90,000 lb
    assert cases["live"].total(sk.bars) == pytest.approx(90_000.0)
    assert cases["dead_super"].total(sk.bars) == pytest.approx(24.0 * 900.0)
    # roof panel gets 20/15 psf instead
    assert cases["roof_live"].total(sk.bars) == pytest.approx(20.0 * 900.0)
    assert cases["roof_dead"].total(sk.bars) == pytest.approx(15.0 * 900.0)


def test_zero_intensity_leaves_only_self_weight():
    sk = single_panel_skeleton()
    lm = LoadModel(dead_psf=0, live_psf=0, roof_live_psf=0, roof_dead_psf=0,
                   cladding_plf=0)
    sections = resolve_sections(sk, assign_random_sections(sk, 0))
    cases = build_gravity_cases(sk, sections, lm)
    for name, case in cases.items():
        if name == "self_weight":
            assert case.total(sk.bars) > 0
        else:
            assert case.total(sk.bars) == 0


def test_self_weight_factor():
    sk = single_panel_skeleton()
    sections = resolve_sections(sk, np.zeros(sk.n_bars, dtype=int))
    cases = build_gravity_cases(sk, sections, LoadModel())
    expected = 1.1 * sum(b.length * s.unit_weight
                         for b, s in zip(sk.bars, sections))
    assert cases["self_weight"].total(sk.bars) == pytest.approx(expected)


def test_cladding_on_boundary_beams_only():
    cfg = SkeletonConfig(spans=(30.0,), base_range=(65.0, 65.0),
                         story_range=(1, 1), cell_keep_prob=1.0)
    sk = sample_skeleton(1, cfg)  # 2x2 cells
    sections = resolve_sections(sk, assign_random_sections(sk, 0))
    cases = build_gravity_cases(sk, sections, LoadModel())
    loaded = set(cases["cladding"].line)
    beams = {i for i, b in enumerate(sk.bars) if b.kind == BEAM}
    assert loaded < beams
    assert len(loaded) == 8  # perimeter of the 2x2 block
    assert cases["cladding"].total(sk.bars) == pytest.approx(410.0 * 8 * 30.0)


def test_tributary_shares_match_loads():
    sk = sample_skeleton(6)
    trib = tributary_areas(sk)
    assert trib.sum() == pytest.approx(sum(p.area for p in sk.panels))
    for i, b in enumerate(sk.bars):
        assert trib[i] == 0 or b.kind == BEAM


def test_lateral_distribution_two_equal_stories():
    f = distribute_base_shear(30.0, np.array([1.0, 1.0]),
                              np.array([16.0, 32.0]))
    assert f[1] / f[0] == pytest.approx(2.0)
    assert f.sum() == pytest.approx(30.0)


def test_story_forces_sum_to_base_shear():
    sk = sample_skeleton(12, SkeletonConfig(story_range=(4, 6)))
    lm = LoadModel()
    sections = resolve_sections(sk, assign_random_sections(sk, 1))
    forces = equivalent_lateral_forces(sk, sections, lm)
    w = story_seismic_weights(sk, sections, lm)
    sds = (2 / 3) * site_coefficient_fa(lm.Ss) * lm.Ss
    v = sds / (lm.R / lm.Ie) * w.sum()
    assert forces.sum() == pytest.approx(v, rel=1e-12)
    assert len(forces) == sk.stories


def test_live_mass_factor_exact():
    sk = single_panel_skeleton(stories=2)
    sections = resolve_sections(sk, assign_random_sections(sk, 0))
    lm1 = LoadModel()
    lm2 = LoadModel(live_psf=200.0)
    w1 = story_seismic_weights(sk, sections, lm1).sum()
    w2 = story_seismic_weights(sk, sections, lm2).sum()
    live_increment = (200.0 - 100.0) * 900.0  # one non-roof panel
    assert w2 - w1 == pytest.approx(0.1 * live_increment, rel=1e-12)


def test_site_coefficient_table():
    assert site_coefficient_fa(1.8) == pytest.approx(1.0)
    assert site_coefficient_fa(0.25) == pytest.approx(1.6)
    assert site_coefficient_fa(0.625) == pytest.approx(1.3)


def test_invalid_seismic_params_rejected():
    sk = single_panel_skeleton()
    sections = resolve_sections(sk, assign_random_sections(sk, 0))
    with pytest.raises(ValueError):
        equivalent_lateral_forces(sk, sections, LoadModel(R=0.0))
    with pytest.raises(ValueError):
        equivalent_lateral_forces(sk, sections, LoadModel(Ie=-1.0))
    with pytest.raises(ValueError):
        LoadModel(live_psf=-5.0)
