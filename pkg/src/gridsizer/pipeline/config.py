"""Run configuration: profiles, YAML files, and validation.

Profiles bundle the scale knobs. `desk` keeps the full pipeline under
half an hour on a laptop-class CPU (small buildings, narrow embeddings,
a stronger lateral-force setting so the drift limit actually binds);
`paper` is the full-scale recipe. Explicit config-file or CLI values
override profile defaults. Validation collects every problem before
reporting.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..loads import LoadModel
from ..skeleton import SkeletonConfig
from ..sizer import SizerConfig
from ..surrogate import SurrogateConfig, TrainHyper

SCENARIO_LIMITS = {"high_safety": 0.015, "low_safety": 0.025}

PROFILES: dict[str, dict] = {
    "desk": {
        "dataset": {"n": 400, "story_range": [1, 3], "base_range": [60, 160],
                    "workers": 0},
        "oracle": {"R": 1.5, "Ie": 1.0},
        "surrogate": {"embed_dim": 64, "prop_steps": 2, "dropout": 0.1,
                      "use_position_aware": False, "anchor_count": 16,
                      "multitask_weight": 1.0},
        "sim_train": {"lr": 3e-4, "weight_decay": 5e-4, "batch": 1,
                      "epochs": 80, "lr_steps": [[50, 1e-4], [70, 5e-5]]},
        "sizer": {"embed_dim": 64, "prop_steps": 2, "epochs": 2000,
                  "update_every": 5, "batch": 5, "lr": 1e-3, "dropout": 0.3,
                  "alpha": 0.6, "eval_n": 100, "eval_seed": 900_000},
        "ga": {"population": 100, "elites": 5, "crossover_rate": 0.9,
               "mutation_rate": 0.01, "iterations": 200},
    },
    "paper": {
        "dataset": {"n": 4000, "story_range": [1, 10], "base_range": [60, 400],
                    "workers": 0},
        "oracle": {"R": 3.0, "Ie": 1.0},
        "surrogate": {"embed_dim": 512, "prop_steps": 5, "dropout": 0.5,
                      "use_position_aware": False, "anchor_count": 512,
                      "multitask_weight": 1.0},
        "sim_train": {"lr": 1e-4, "weight_decay": 5e-4, "batch": 1,
                      "epochs": 5, "lr_steps": []},
        "sizer": {"embed_dim": 512, "prop_steps": 5, "epochs": 50_000,
                  "update_every": 5, "batch": 5, "lr": 1e-4, "dropout": 0.5,
                  "alpha": 0.6, "eval_n": 500, "eval_seed": 900_000},
        "ga": {"population": 100, "elites": 5, "crossover_rate": 0.9,
               "mutation_rate": 0.01, "iterations": 1000},
    },
}

DUAL_DEFAULTS = {"w_drift": 1e3, "gamma_drift": 1e-1,
                 "w_variety": 1.0, "gamma_variety": 5e-4,
                 "w_entropy": 1.0, "gamma_entropy": 1e-3}


class ConfigError(ValueError):
    """Carries every validation problem at once."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("invalid configuration:\n  - " + "\n  - ".join(problems))


def _deep_merge(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


@dataclass
class RunConfig:
    raw: dict = field(default_factory=dict)

    @classmethod
    def build(cls, profile: str = "desk", config_file: str | Path | None = None,
              overrides: dict | None = None) -> "RunConfig":
        problems: list[str] = []
        if profile not in PROFILES:
            raise ConfigError([f"unknown profile {profile!r} "
                               f"(--profile desk|paper)"])
        doc = _deep_merge(
            {"profile": profile, "seed": 0, "scenario": "high_safety",
             "objective_weight": 1.0, "paths": {}},
            PROFILES[profile])
        if config_file is not None:
            path = Path(config_file)
            if not path.exists():
                raise ConfigError([f"config file not found: {path} (--config)"])
            loaded = yaml.safe_load(path.read_text()) or {}
            if not isinstance(loaded, dict):
                raise ConfigError([f"config file {path} must hold a mapping"])
            doc = _deep_merge(doc, loaded)
        if overrides:
            doc = _deep_merge(doc, overrides)
        cfg = cls(raw=doc)
        problems += cfg._validate()
        if problems:
            raise ConfigError(problems)
        return cfg

    def _validate(self) -> list[str]:
        p: list[str] = []
        d = self.raw
        if d["scenario"] not in SCENARIO_LIMITS and "drift_limit" not in d:
            p.append(f"scenario must be one of {sorted(SCENARIO_LIMITS)} "
                     f"unless drift_limit is set explicitly (--scenario)")
        ds = d["dataset"]
        if ds["n"] <= 0:
            p.append("dataset.n must be positive (--n)")
        lo, hi = ds["story_range"]
        if not 1 <= lo <= hi <= 10:
            p.append("dataset.story_range must lie within [1, 10] (--stories)")
        if not 60 <= ds["base_range"][0] <= ds["base_range"][1] <= 400:
            p.append("dataset.base_range must lie within [60, 400]")
        if d["oracle"]["R"] <= 0 or d["oracle"]["Ie"] <= 0:
            p.append("oracle.R and oracle.Ie must be positive")
        if d["objective_weight"] < 0:
            p.append("objective_weight must be nonnegative (--w0)")
        sz = d["sizer"]
        if sz["epochs"] <= 0 or sz["update_every"] <= 0:
            p.append("sizer.epochs and sizer.update_every must be positive")
        if not 0 < sz["alpha"] < 1:
            p.append("sizer.alpha must be in (0, 1)")
        return p

    # ------------------------------------------------------ typed accessors

    @property
    def seed(self) -> int:
        return int(self.raw["seed"])

    @property
    def drift_limit(self) -> float:
        if "drift_limit" in self.raw:
            return float(self.raw["drift_limit"])
        return SCENARIO_LIMITS[self.raw["scenario"]]

    def skeleton_config(self) -> SkeletonConfig:
        ds = self.raw["dataset"]
        return SkeletonConfig(
            base_range=tuple(float(v) for v in ds["base_range"]),
            story_range=tuple(int(v) for v in ds["story_range"]))

    def load_model(self) -> LoadModel:
        o = self.raw["oracle"]
        return LoadModel(R=float(o["R"]), Ie=float(o["Ie"]))

    def surrogate_config(self) -> SurrogateConfig:
        s = self.raw["surrogate"]
        return SurrogateConfig(
            embed_dim=int(s["embed_dim"]), prop_steps=int(s["prop_steps"]),
            use_position_aware=bool(s["use_position_aware"]),
            anchor_count=int(s["anchor_count"]), dropout=float(s["dropout"]),
            drift_limit=self.drift_limit,
            multitask_weight=float(s["multitask_weight"]))

    def train_hyper(self) -> TrainHyper:
        t = self.raw["sim_train"]
        return TrainHyper(
            lr=float(t["lr"]), weight_decay=float(t["weight_decay"]),
            batch=int(t["batch"]), epochs=int(t["epochs"]),
            seed=self.seed,
            lr_steps=tuple((int(e), float(lr)) for e, lr in t["lr_steps"]))

    def sizer_config(self) -> SizerConfig:
        s = _deep_merge(DUAL_DEFAULTS, self.raw["sizer"])
        return SizerConfig(
            embed_dim=int(s["embed_dim"]), prop_steps=int(s["prop_steps"]),
            alpha=float(s["alpha"]), drift_limit=self.drift_limit,
            objective_weight=float(self.raw["objective_weight"]),
            w_drift=float(s["w_drift"]), gamma_drift=float(s["gamma_drift"]),
            w_variety=float(s["w_variety"]),
            gamma_variety=float(s["gamma_variety"]),
            w_entropy=float(s["w_entropy"]),
            gamma_entropy=float(s["gamma_entropy"]),
            epochs=int(s["epochs"]), update_every=int(s["update_every"]),
            batch=int(s["batch"]), lr=float(s["lr"]),
            dropout=float(s["dropout"]))

    def ga_config(self, **kw):
        from ..ga import GAConfig
        g = self.raw["ga"]
        base = dict(population=int(g["population"]), elites=int(g["elites"]),
                    crossover_rate=float(g["crossover_rate"]),
                    mutation_rate=float(g["mutation_rate"]),
                    iterations=int(g["iterations"]),
                    objective_weight=float(self.raw["objective_weight"]),
                    w_drift=DUAL_DEFAULTS["w_drift"],
                    w_variety=DUAL_DEFAULTS["w_variety"],
                    drift_limit=self.drift_limit)
        base.update(kw)
        return GAConfig(**base)
