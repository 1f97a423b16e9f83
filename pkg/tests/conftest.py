"""Shared fixtures: a small trained surrogate/sizer pair (session scope)."""

import numpy as np
import pytest

from gridsizer.loads import LoadModel
from gridsizer.pipeline.generate import generate_records
from gridsizer.pipeline.records import split_indices
from gridsizer.sizer import SizerConfig, skeleton_sampler, train_sizer
from gridsizer.skeleton import SkeletonConfig
from gridsizer.surrogate import (SurrogateConfig, TrainHyper,
                                 prepare_examples, train)

FIXTURE_SKELETONS = SkeletonConfig(base_range=(60.0, 120.0),
                                   story_range=(1, 3))
FIXTURE_LM = LoadModel(R=1.5)
FIXTURE_LIMIT = 0.015


@pytest.fixture(scope="session")
def small_dataset():
    header, records = generate_records(150, FIXTURE_SKELETONS, FIXTURE_LM,
                                       seed=4000, workers=0)
    return header, records


@pytest.fixture(scope="session")
def small_surrogate(small_dataset):
    header, records = small_dataset
    scale = float(header["drift_scale"])
    examples = prepare_examples(records, scale, FIXTURE_LIMIT)
    splits = split_indices(len(examples), seed=1)
    cfg = SurrogateConfig(embed_dim=48, prop_steps=2, dropout=0.1,
                          drift_limit=FIXTURE_LIMIT)
    model, _ = train([examples[i] for i in splits["train"]], [], cfg,
                     TrainHyper(lr=3e-4, epochs=25, seed=0,
                                lr_steps=((18, 1e-4),)), scale)
    model.params.meta["drift_limit"] = FIXTURE_LIMIT
    test_examples = [examples[i] for i in splits["test"]]
    return model, test_examples, scale


@pytest.fixture(scope="session")
def small_sizer(small_surrogate):
    surrogate, _, _ = small_surrogate
    cfg = SizerConfig(embed_dim=32, prop_steps=2, epochs=150, update_every=5,
                      lr=1e-3, dropout=0.2, drift_limit=FIXTURE_LIMIT)
    sizer, report = train_sizer(cfg, surrogate,
                                skeleton_sampler(FIXTURE_SKELETONS, 77_000),
                                seed=3)
    return sizer, cfg, report


@pytest.fixture(scope="session")
def served_weights(tmp_path_factory, small_surrogate, small_sizer):
    path = tmp_path_factory.mktemp("weights")
    surrogate, _, _ = small_surrogate
    sizer, _, _ = small_sizer
    sim_path = path / "sim.gsw"
    sizer_path = path / "sizer.gsw"
    surrogate.params.save(sim_path)
    sizer.params.save(sizer_path)
    return str(sim_path), str(sizer_path)
