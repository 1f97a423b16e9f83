"""Command-line entry point.

    gridsizer gen         --n 400 --out data/desk.jsonl
    gridsizer train-sim   --dataset data/desk.jsonl --out weights/sim.gsw
    gridsizer train-sizer --surrogate weights/sim.gsw --out weights/sizer.gsw
    gridsizer ga          --surrogate weights/sim.gsw --skeleton-seed 3 ...
    gridsizer compare     runs/*.json --out reports/seeding
    gridsizer serve       --sim weights/sim.gsw --sizer weights/sizer.gsw

Every command accepts --config <yaml>, --profile desk|paper and --seed.
Configuration problems exit with status 2 and list every issue at once.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridsizer")
    sub = parser.add_subparsers(dest="command")
    parser.set_defaults(command=None)

    def common(p):
        p.add_argument("--config", default=None, help="YAML config file")
        p.add_argument("--profile", default="desk", choices=["desk", "paper"])
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--scenario", default=None,
                       choices=["high_safety", "low_safety"])

    g = sub.add_parser("gen", help="generate a simulated dataset")
    common(g)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--stories", type=int, nargs=2, metavar=("LO", "HI"))
    g.add_argument("--workers", type=int, default=None)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("train-sim", help="train the drift surrogate")
    common(t)
    t.add_argument("--dataset", required=True)
    t.add_argument("--out", required=True, help="weight container path")
    t.add_argument("--report", default=None)
    t.set_defaults(func=cmd_train_sim)

    z = sub.add_parser("train-sizer", help="train the sizing network")
    common(z)
    z.add_argument("--surrogate", required=True, help="surrogate weights")
    z.add_argument("--out", required=True)
    z.add_argument("--report", default=None)
    z.add_argument("--w0", type=float, default=None, help="objective weight")
    z.add_argument("--oracle-eval", action="store_true",
                   help="also evaluate drifts through the frame oracle")
    z.set_defaults(func=cmd_train_sizer)

    a = sub.add_parser("ga", help="run the genetic optimizer")
    common(a)
    a.add_argument("--surrogate", default=None,
                   help="surrogate weights (omit for the frame oracle)")
    a.add_argument("--sizer", default=None, help="sizing-network weights")
    a.add_argument("--strategy", default="random",
                   choices=["random", "best_seed", "sampled_seeds"])
    a.add_argument("--skeleton-seed", type=int, required=True)
    a.add_argument("--iterations", type=int, default=None)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_ga)

    c = sub.add_parser("compare", help="seeding metrics across run artifacts")
    c.add_argument("artifacts", nargs="+")
    c.add_argument("--out", required=True, help="output prefix (.csv/.json)")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("serve", help="HTTP evaluation service")
    common(s)
    s.add_argument("--sim", required=True, help="surrogate weights")
    s.add_argument("--sizer", default=None, help="sizing-network weights")
    s.add_argument("--addr", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8777)
    s.add_argument("--oracle", action="store_true",
                   help="allow oracle-backed evaluation requests")
    s.set_defaults(func=cmd_serve)
    return parser


def load_config(args, extra: dict | None = None) -> RunConfig:
    overrides: dict = dict(extra or {})
    if args.seed is not None:
        overrides["seed"] = args.seed
    if getattr(args, "scenario", None):
        overrides["scenario"] = args.scenario
    return RunConfig.build(profile=args.profile, config_file=args.config,
                           overrides=overrides)


# ---------------------------------------------------------------- commands

def cmd_gen(args) -> int:
    from .generate import generate_records
    from .records import write_dataset, write_split_manifest

    extra: dict = {"dataset": {}}
    if args.n is not None:
        extra["dataset"]["n"] = args.n
    if args.stories is not None:
        extra["dataset"]["story_range"] = list(args.stories)
    if args.workers is not None:
        extra["dataset"]["workers"] = args.workers
    cfg = load_config(args, extra)
    ds = cfg.raw["dataset"]
    workers = ds["workers"] or None
    t0 = time.time()
    header, records = generate_records(
        int(ds["n"]), cfg.skeleton_config(), cfg.load_model(), cfg.seed,
        workers=workers)
    write_dataset(args.out, header, records)
    manifest = write_split_manifest(args.out, cfg.seed, len(records))
    print(f"wrote {len(records)} records to {args.out} "
          f"(scale={header['drift_scale']:.6f}, replaced={header['replaced']}, "
          f"{time.time() - t0:.1f}s); splits: {manifest}")
    return 0


def _load_examples(dataset: str, cfg: RunConfig):
    from ..surrogate import prepare_examples
    from .records import read_dataset, split_indices

    header, records = read_dataset(dataset)
    scale = float(header["drift_scale"])
    examples = prepare_examples(records, scale, cfg.drift_limit)
    splits = split_indices(len(examples), int(header["seed"]))
    sets = {name: [examples[i] for i in idx] for name, idx in splits.items()}
    return header, scale, sets


def cmd_train_sim(args) -> int:
    from ..surrogate import evaluate, train

    cfg = load_config(args)
    if not Path(args.dataset).exists():
        print(f"error: dataset not found: {args.dataset} (--dataset)",
              file=sys.stderr)
        return 2
    header, scale, sets = _load_examples(args.dataset, cfg)
    model, report = train(sets["train"], sets["val"], cfg.surrogate_config(),
                          cfg.train_hyper(), scale)
    metrics = evaluate(model, sets["test"])
    report["test"] = metrics
    report["oracle_hash"] = header["oracle_hash"]
    model.params.meta["oracle_hash"] = header["oracle_hash"]
    model.params.meta["drift_limit"] = cfg.drift_limit
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    model.params.save(args.out)
    if args.report:
        Path(args.report).parent.mkdir(parents=True, exist_ok=True)
        Path(args.report).write_text(json.dumps(report, indent=1))
    print("test metrics:", json.dumps(metrics))
    print(f"weights: {args.out}")
    return 0


def cmd_train_sizer(args) -> int:
    from ..autodiff import ModelParams
    from ..sizer import (evaluate_sizer, evaluation_skeletons,
                         skeleton_sampler, train_sizer)
    from ..surrogate import DriftSurrogate

    extra = {}
    if args.w0 is not None:
        extra["objective_weight"] = args.w0
    cfg = load_config(args, extra)
    if not Path(args.surrogate).exists():
        print(f"error: surrogate weights not found: {args.surrogate} "
              f"(--surrogate)", file=sys.stderr)
        return 2
    surrogate = DriftSurrogate.from_params(ModelParams.load(args.surrogate))
    scfg = cfg.sizer_config()
    sampler = skeleton_sampler(cfg.skeleton_config(), cfg.seed + 500_000)
    sizer, report = train_sizer(scfg, surrogate, sampler, seed=cfg.seed)
    evals = evaluation_skeletons(cfg.skeleton_config(),
                                 int(cfg.raw["sizer"]["eval_seed"]),
                                 int(cfg.raw["sizer"]["eval_n"]))
    lm = cfg.load_model() if args.oracle_eval else None
    report["evaluation"] = evaluate_sizer(sizer, surrogate, evals, scfg, lm=lm)
    report["scenario"] = cfg.raw["scenario"]
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    sizer.params.save(args.out)
    if args.report:
        Path(args.report).parent.mkdir(parents=True, exist_ok=True)
        Path(args.report).write_text(json.dumps(report, indent=1))
    print("evaluation:", json.dumps(report["evaluation"]))
    print(f"weights: {args.out}")
    return 0


def cmd_ga(args) -> int:
    from ..autodiff import ModelParams
    from ..ga import OracleEvaluator, SurrogateEvaluator, run_ga
    from ..graph import to_graph
    from ..sizer import SectionSizer
    from ..skeleton import sample_skeleton
    from ..surrogate import DriftSurrogate

    cfg = load_config(args)
    ga_cfg = cfg.ga_config(**({"iterations": args.iterations}
                              if args.iterations is not None else {}))
    sk = sample_skeleton(args.skeleton_seed, cfg.skeleton_config())
    if args.surrogate:
        surrogate = DriftSurrogate.from_params(ModelParams.load(args.surrogate))
        evaluator = SurrogateEvaluator(sk, surrogate, ga_cfg)
    else:
        evaluator = OracleEvaluator(sk, cfg.load_model(), ga_cfg)
    p_soft = None
    if args.strategy != "random":
        if not args.sizer:
            print("error: --sizer weights required for seeded strategies "
                  "(--strategy)", file=sys.stderr)
            return 2
        sizer = SectionSizer.from_params(ModelParams.load(args.sizer))
        _, p_soft = sizer.propose(to_graph(sk))
    run = run_ga(sk, evaluator, ga_cfg, seed=cfg.seed,
                 strategy=args.strategy, p_soft=p_soft)
    doc = run.to_dict()
    doc["skeleton_seed"] = args.skeleton_seed
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(doc, indent=1))
    print(f"best loss {run.best_loss:.4f} after {ga_cfg.iterations} iterations "
          f"-> {args.out}")
    return 0


def cmd_compare(args) -> int:
    from ..ga import seeding_metrics

    runs = []
    for path in args.artifacts:
        doc = json.loads(Path(path).read_text())
        doc["_path"] = path
        runs.append(doc)
    by_skeleton: dict[str, dict[str, dict]] = {}
    for doc in runs:
        by_skeleton.setdefault(doc["skeleton_hash"], {})[doc["strategy"]] = doc

    rows = []
    series = []
    for sk_hash, strategies in sorted(by_skeleton.items()):
        if "random" not in strategies:
            print(f"error: no random baseline for skeleton {sk_hash}; "
                  f"artifacts have mismatched skeleton hashes",
                  file=sys.stderr)
            return 2
        rand = strategies["random"]
        series.append({"skeleton": sk_hash, "strategy": "random",
                       "trace": rand["trace"]})
        for name, doc in sorted(strategies.items()):
            if name == "random":
                continue
            m = seeding_metrics(rand["trace"], doc["trace"])
            rows.append({"skeleton": sk_hash, "strategy": name,
                         "M1": m["M1"], "M2": m["M2"], "M3": m["M3"],
                         "rand_end": rand["trace"][-1],
                         "seeded_end": doc["trace"][-1]})
            series.append({"skeleton": sk_hash, "strategy": name,
                           "trace": doc["trace"]})

    def agg(key):
        vals = [r[key] for r in rows if r[key] is not None]
        return {"mean": float(np.mean(vals)) if vals else None,
                "median": float(np.median(vals)) if vals else None}

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    summary = {"runs": rows, "aggregate": {k: agg(k) for k in ("M1", "M2", "M3")},
               "series": series}
    out.with_suffix(".json").write_text(json.dumps(summary, indent=1))
    with open(out.with_suffix(".csv"), "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["skeleton", "strategy", "M1",
                                                "M2", "M3", "rand_end",
                                                "seeded_end"])
        writer.writeheader()
        writer.writerows(rows)
    print(json.dumps(summary["aggregate"]))
    print(f"wrote {out.with_suffix('.json')} and {out.with_suffix('.csv')}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    cfg = load_config(args)
    app = create_app(sim_weights=args.sim, sizer_weights=args.sizer,
                     run_config=cfg, allow_oracle=args.oracle)
    uvicorn.run(app, host=args.addr, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
