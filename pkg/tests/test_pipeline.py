"""Dataset generation, config validation, CLI command flow."""

import json
from pathlib import Path

import numpy as np
import pytest
import yaml

from gridsizer.loads import LoadModel
from gridsizer.pipeline.cli import main
from gridsizer.pipeline.config import ConfigError, RunConfig
from gridsizer.pipeline.generate import generate_records
from gridsizer.pipeline.records import (oracle_config_hash, read_dataset,
                                        split_indices, write_dataset,
                                        write_split_manifest)
from gridsizer.skeleton import SkeletonConfig

GEN_CFG = SkeletonConfig(base_range=(60.0, 100.0), story_range=(1, 2))
GEN_LM = LoadModel(R=1.5)


def test_generation_deterministic_bytes(tmp_path):
    paths = []
    for run in range(2):
        header, records = generate_records(10, GEN_CFG, GEN_LM, seed=5,
                                           workers=0)
        p = tmp_path / f"d{run}.jsonl"
        write_dataset(p, header, records)
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_parallel_generation_matches_serial(tmp_path):
    h1, r1 = generate_records(8, GEN_CFG, GEN_LM, seed=3, workers=0)
    h2, r2 = generate_records(8, GEN_CFG, GEN_LM, seed=3, workers=2)
    a, b = tmp_path / "serial.jsonl", tmp_path / "par.jsonl"
    write_dataset(a, h1, r1)
    write_dataset(b, h2, r2)
    assert a.read_bytes() == b.read_bytes()


def test_story_range_respected_and_drifts_normalized():
    cfg = SkeletonConfig(base_range=(60.0, 120.0), story_range=(2, 2))
    header, records = generate_records(12, cfg, GEN_LM, seed=11, workers=0)
    for rec in records:
        assert rec["skeleton"]["stories"] == 2
        drifts = np.array(rec["drift_x"] + rec["drift_y"])
        assert np.all(np.abs(drifts) <= 1.0 + 1e-12)
    all_d = np.concatenate([rec["drift_x"] + rec["drift_y"]
                            for rec in records])
    assert np.abs(all_d).max() == pytest.approx(1.0)


def test_dataset_round_trip(tmp_path):
    header, records = generate_records(5, GEN_CFG, GEN_LM, seed=2, workers=0)
    p = tmp_path / "round.jsonl"
    write_dataset(p, header, records)
    h2, r2 = read_dataset(p)
    assert h2["drift_scale"] == header["drift_scale"]
    assert h2["oracle_hash"] == oracle_config_hash(GEN_LM)
    assert len(r2) == 5
    assert r2[0]["skeleton"]["bars"] == records[0]["skeleton"]["bars"]


def test_split_manifest(tmp_path):
    splits = split_indices(100, seed=3)
    assert len(splits["train"]) == 80
    assert len(splits["val"]) == 10
    assert len(splits["test"]) == 10
    combined = sorted(splits["train"] + splits["val"] + splits["test"])
    assert combined == list(range(100))
    header, records = generate_records(5, GEN_CFG, GEN_LM, seed=2, workers=0)
    p = tmp_path / "ds.jsonl"
    write_dataset(p, header, records)
    mpath = write_split_manifest(p, seed=2, n=5)
    doc = json.loads(Path(mpath).read_text())
    assert doc["splits"] == split_indices(5, 2)


def test_config_profiles_and_scenarios():
    cfg = RunConfig.build(profile="desk")
    assert cfg.drift_limit == 0.015
    assert cfg.surrogate_config().embed_dim == 64
    assert cfg.load_model().R == 1.5
    low = RunConfig.build(profile="desk", overrides={"scenario": "low_safety"})
    assert low.drift_limit == 0.025
    paper = RunConfig.build(profile="paper")
    assert paper.surrogate_config().embed_dim == 512
    assert paper.sizer_config().epochs == 50_000
    assert paper.load_model().R == 3.0


def test_config_rejects_all_problems_at_once():
    with pytest.raises(ConfigError) as err:
        RunConfig.build(profile="desk", overrides={
            "scenario": "medium",
            "dataset": {"n": -1, "story_range": [0, 12]},
            "objective_weight": -2.0,
        })
    msg = str(err.value)
    assert msg.count("\n  - ") >= 4
    assert "--scenario" in msg and "--n" in msg and "--w0" in msg


def test_config_file_merging(tmp_path):
    f = tmp_path / "run.yaml"
    f.write_text(yaml.safe_dump({"seed": 77, "sizer": {"epochs": 123}}))
    cfg = RunConfig.build(profile="desk", config_file=f)
    assert cfg.seed == 77
    assert cfg.sizer_config().epochs == 123
    assert cfg.surrogate_config().embed_dim == 64  # profile default kept


def test_cli_missing_dataset_exits_2(tmp_path, capsys):
    rc = main(["train-sim", "--dataset", str(tmp_path / "nope.jsonl"),
               "--out", str(tmp_path / "w.gsw")])
    assert rc == 2
    assert "--dataset" in capsys.readouterr().err


def test_cli_unknown_config_exits_2(tmp_path, capsys):
    rc = main(["gen", "--config", str(tmp_path / "missing.yaml"),
               "--n", "2", "--out", str(tmp_path / "d.jsonl")])
    assert rc == 2
    assert "--config" in capsys.readouterr().err


def test_cli_end_to_end_tiny(tmp_path, capsys):
    """gen -> train-sim -> train-sizer -> ga (seeded + random) -> compare."""
    cfg_file = tmp_path / "tiny.yaml"
    cfg_file.write_text(yaml.safe_dump({
        "dataset": {"n": 24, "story_range": [1, 2], "base_range": [60, 100]},
        "surrogate": {"embed_dim": 16, "prop_steps": 1, "dropout": 0.0},
        "sim_train": {"epochs": 2, "lr": 3e-4, "lr_steps": []},
        "sizer": {"embed_dim": 16, "prop_steps": 1, "epochs": 20,
                  "update_every": 5, "lr": 1e-3, "eval_n": 3,
                  "eval_seed": 900000, "dropout": 0.0},
        "ga": {"iterations": 3, "population": 12, "elites": 2},
    }))
    data = tmp_path / "data.jsonl"
    sim_w = tmp_path / "sim.gsw"
    sizer_w = tmp_path / "sizer.gsw"

    assert main(["gen", "--config", str(cfg_file), "--out", str(data)]) == 0
    assert data.exists() and Path(str(data) + ".splits.json").exists()

    assert main(["train-sim", "--config", str(cfg_file), "--dataset",
                 str(data), "--out", str(sim_w),
                 "--report", str(tmp_path / "sim_report.json")]) == 0
    report = json.loads((tmp_path / "sim_report.json").read_text())
    assert {"l1_loss", "relative_accuracy",
            "classification_accuracy"} <= set(report["test"])

    assert main(["train-sizer", "--config", str(cfg_file), "--surrogate",
                 str(sim_w), "--out", str(sizer_w),
                 "--report", str(tmp_path / "sizer_report.json")]) == 0
    zreport = json.loads((tmp_path / "sizer_report.json").read_text())
    assert "mass_objective" in zreport["evaluation"]

    for strategy, out in (("random", "rand.json"),
                          ("sampled_seeds", "seeded.json")):
        args = ["ga", "--config", str(cfg_file), "--surrogate", str(sim_w),
                "--strategy", strategy, "--skeleton-seed", "5",
                "--out", str(tmp_path / out)]
        if strategy != "random":
            args += ["--sizer", str(sizer_w)]
        assert main(args) == 0

    assert main(["compare", str(tmp_path / "rand.json"),
                 str(tmp_path / "seeded.json"),
                 "--out", str(tmp_path / "cmp")]) == 0
    cmp_doc = json.loads((tmp_path / "cmp.json").read_text())
    assert cmp_doc["runs"][0]["strategy"] == "sampled_seeds"
    assert len(cmp_doc["series"]) == 2
    assert all(len(s["trace"]) == 4 for s in cmp_doc["series"])
    assert (tmp_path / "cmp.csv").exists()


def test_cli_ga_seeded_requires_sizer(tmp_path, capsys):
    rc = main(["ga", "--strategy", "best_seed", "--skeleton-seed", "1",
               "--surrogate", "also-missing.gsw",
               "--out", str(tmp_path / "x.json")])
    assert rc == 2


def test_compare_rejects_missing_baseline(tmp_path, capsys):
    doc = {"skeleton_hash": "abc", "strategy": "best_seed",
           "trace": [1.0, 0.5], "config": {}, "seed": 0,
           "evaluator": "stub", "best_genes": [0], "best_loss": 0.5}
    p = tmp_path / "lonely.json"
    p.write_text(json.dumps(doc))
    rc = main(["compare", str(p), "--out", str(tmp_path / "cmp")])
    assert rc == 2
    assert "mismatched skeleton hashes" in capsys.readouterr().err
