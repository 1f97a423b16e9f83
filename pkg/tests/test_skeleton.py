"""Skeleton sampling: determinism, geometry invariants, statistics."""

import numpy as np
import pytest

from gridsizer.sections import BEAM, COLUMN
from gridsizer.skeleton import (Bar, Skeleton, SkeletonConfig,
                                assign_random_sections, sample_skeleton)

MINIMAL = SkeletonConfig(spans=(40.0,), base_range=(60.0, 60.0),
                         story_range=(1, 1))


def test_default_sample_within_bounds():
    sk = sample_skeleton(7)
    assert 1 <= sk.stories <= 10
    assert sk.story_height == 16.0
    assert all(28.0 <= s <= 40.0 for s in sk.spans_x + sk.spans_y)


def test_determinism_byte_identical():
    assert sample_skeleton(7) == sample_skeleton(7)
    assert sample_skeleton(7) != sample_skeleton(8)


def test_minimal_voxel_is_four_columns_four_beams():
    sk = sample_skeleton(3, MINIMAL)
    assert len(sk.cells) == 1 and sk.stories == 1
    kinds = [b.kind for b in sk.bars]
    assert kinds.count(COLUMN) == 4
    assert kinds.count(BEAM) == 4


def test_layout_replicated_on_all_stories():
    sk = sample_skeleton(11, SkeletonConfig(story_range=(3, 3)))
    per_story = {}
    for b in sk.bars:
        per_story.setdefault(b.story, []).append((b.kind, b.p1[:2], b.p2[:2]))
    footprints = [sorted(v) for _, v in sorted(per_story.items())]
    assert footprints[0] == footprints[1] == footprints[2]


def test_endpoints_on_grid_lattice():
    sk = sample_skeleton(5)
    gx, gy = set(sk.grid_x), set(sk.grid_y)
    levels = {sk.story_height * k for k in range(sk.stories + 1)}
    for b in sk.bars:
        for p in (b.p1, b.p2):
            assert any(abs(p[0] - g) < 1e-9 for g in gx)
            assert any(abs(p[1] - g) < 1e-9 for g in gy)
            assert any(abs(p[2] - z) < 1e-9 for z in levels)


def test_panels_tile_occupied_cells():
    sk = sample_skeleton(9)
    per_story = {}
    for p in sk.panels:
        per_story.setdefault(p.story, 0)
        per_story[p.story] += 1
    assert set(per_story) == set(range(1, sk.stories + 1))
    assert all(n == len(sk.cells) for n in per_story.values())
    gx, gy = sk.grid_x, sk.grid_y
    cell_rects = {(gx[i], gy[j], gx[i + 1], gy[j + 1]) for i, j in sk.cells}
    for p in sk.panels:
        assert (p.x0, p.y0, p.x1, p.y1) in cell_rects


def test_columns_support_every_story():
    sk = sample_skeleton(21, SkeletonConfig(story_range=(4, 8)))
    col_xy = {}
    for b in sk.bars:
        if b.kind == COLUMN:
            col_xy.setdefault(b.p1[:2], set()).add(b.story)
    for xy, stories in col_xy.items():
        assert stories == set(range(1, sk.stories + 1))


def test_invalid_configs_rejected():
    with pytest.raises(ValueError):
        SkeletonConfig(spans=())
    with pytest.raises(ValueError):
        SkeletonConfig(story_range=(0, 3))
    with pytest.raises(ValueError):
        SkeletonConfig(base_range=(10.0, 50.0))
    with pytest.raises(ValueError):
        Bar((0.0, 0.0, 0.0), (1.0, 0.0, 1.0), COLUMN, 1)
    with pytest.raises(ValueError):
        Bar((0.0, 0.0, 0.0), (1.0, 0.0, 1.0), BEAM, 1)


def test_random_sections_ranges_and_determinism():
    sk = sample_skeleton(13)
    idx = assign_random_sections(sk, 99)
    assert np.array_equal(idx, assign_random_sections(sk, 99))
    for bar, i in zip(sk.bars, idx):
        assert 0 <= i <= (4 if bar.kind == COLUMN else 8)


def test_random_sections_uniformity():
    # chi-square style bound: each beam slot within 2% of 1/9 over 1e5 draws
    cfg = SkeletonConfig(base_range=(200.0, 200.0), story_range=(10, 10))
    draws = []
    seed = 0
    while len(draws) < 100_000:
        sk = sample_skeleton(seed, cfg)
        idx = assign_random_sections(sk, seed)
        draws.extend(int(i) for b, i in zip(sk.bars, idx) if b.kind == BEAM)
        seed += 1
    draws = np.array(draws[:100_000])
    freq = np.bincount(draws, minlength=9) / len(draws)
    assert np.all(np.abs(freq - 1 / 9) < 0.02)


def test_sampler_statistics_over_seeds():
    stories_seen = set()
    for seed in range(1000):
        sk = sample_skeleton(seed)
        stories_seen.add(sk.stories)
        assert sk.n_bars + 1 >= 9
    assert stories_seen == set(range(1, 11))
