"""Training and evaluation for the drift surrogate."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np

from ..autodiff import Adam, ops
from ..graph import StructuralGraph, to_graph
from ..netgraph import make_batch
from ..skeleton import skeleton_from_dict
from .model import DriftSurrogate, SurrogateConfig


@dataclass
class TrainHyper:
    lr: float = 1e-4
    weight_decay: float = 5e-4
    batch: int = 1
    epochs: int = 5
    seed: int = 0
    # optional step schedule: (epoch, new_lr) pairs
    lr_steps: tuple = ()


@dataclass
class Example:
    graph: StructuralGraph
    truth: np.ndarray   # (stories, 2) normalized drifts
    labels: np.ndarray  # (stories, 2) exceedance of the raw limit


def prepare_examples(records: list[dict], drift_scale: float,
                     drift_limit: float) -> list[Example]:
    out = []
    for rec in records:
        sk = skeleton_from_dict(rec["skeleton"])
        g = to_graph(sk, np.asarray(rec["sections"], dtype=np.int64))
        truth = np.column_stack([rec["drift_x"], rec["drift_y"]])
        labels = (np.abs(truth * drift_scale) > drift_limit).astype(float)
        out.append(Example(g, truth, labels))
    return out


def evaluate(model: DriftSurrogate, examples: list[Example]) -> dict:
    """L1 loss, relative accuracy and classification accuracy (eval mode)."""
    abs_err = []
    rel_err = []
    correct = []
    for ex in examples:
        pred = model.predict([ex.graph])[0]
        err = np.abs(pred.h - ex.truth)
        abs_err.append(err.ravel())
        rel_err.append((err / (np.abs(ex.truth) + 1e-6)).ravel())
        correct.append(((pred.c > 0.5) == (ex.labels > 0.5)).ravel())
    rel_acc = 1.0 - float(np.concatenate(rel_err).mean())
    return {
        "l1_loss": float(np.concatenate(abs_err).mean()),
        "relative_accuracy": float(np.clip(rel_acc, 0.0, 1.0)),
        "classification_accuracy": float(np.concatenate(correct).mean()),
    }


def train(train_set: list[Example], val_set: list[Example],
          cfg: SurrogateConfig, hyper: TrainHyper,
          drift_scale: float) -> tuple[DriftSurrogate, dict]:
    if not train_set:
        raise ValueError("empty training set")
    model = DriftSurrogate(cfg, seed=hyper.seed)
    opt = Adam(model.params, lr=hyper.lr, weight_decay=hyper.weight_decay)
    shuffle_rng = np.random.default_rng(hyper.seed + 1)

    curve = []
    t0 = time.time()
    lr_steps = dict(hyper.lr_steps)
    for epoch in range(hyper.epochs):
        if epoch in lr_steps:
            opt.lr = lr_steps[epoch]
        order = shuffle_rng.permutation(len(train_set))
        losses = []
        pending = 0
        for idx in order:
            ex = train_set[idx]
            batch = make_batch([ex.graph])
            h, c = model.forward_batch(batch, train=True)
            loss = model.loss(h, c, ex.truth, ex.labels)
            loss.backward()
            losses.append(loss.item())
            pending += 1
            if pending >= hyper.batch:
                opt.step()
                opt.zero_grad()
                pending = 0
        if pending:
            opt.step()
            opt.zero_grad()
        entry = {"epoch": epoch, "train_loss": float(np.mean(losses))}
        if val_set:
            entry.update({f"val_{k}": v
                          for k, v in evaluate(model, val_set).items()})
        curve.append(entry)

    report = {
        "model": "drift_surrogate"
                 + ("+position" if cfg.use_position_aware else ""),
        "hyper": asdict(hyper),
        "drift_scale": drift_scale,
        "train_seconds": time.time() - t0,
        "loss_curve": curve,
    }
    model.params.meta["drift_scale"] = drift_scale
    return model, report
