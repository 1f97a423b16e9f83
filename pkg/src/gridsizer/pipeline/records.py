"""Dataset file format and split manifests.

A dataset is a JSONL file: one header line followed by one record per
line. The header stores the drift normalization scale (drifts in records
are divided by it, landing in [-1, 1]), the generator seed, and a hash of
the oracle configuration so training can refuse mismatched data.

Record fields: skeleton (see skeleton JSON schema), sections (per-bar
sub-library indices), drift_x / drift_y (normalized, one per story),
mass (lb), seed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from ..loads import LoadModel
from ..sections import BEAM_SECTIONS, COLUMN_SECTIONS

FORMAT_VERSION = 1


def oracle_config_hash(lm: LoadModel) -> str:
    doc = {
        "load_model": asdict(lm),
        "sections": [(s.name, s.A, s.Ix, s.Iy, s.J)
                     for s in COLUMN_SECTIONS + BEAM_SECTIONS],
    }
    return hashlib.sha256(
        json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]


def write_dataset(path: str | Path, header: dict, records: list[dict]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(json.dumps({"type": "header", **header}, sort_keys=True) + "\n")
        for rec in records:
            fh.write(json.dumps({"type": "record", **rec}, sort_keys=True) + "\n")


def read_dataset(path: str | Path) -> tuple[dict, list[dict]]:
    header = None
    records = []
    with open(path) as fh:
        for line in fh:
            doc = json.loads(line)
            if doc["type"] == "header":
                if header is not None:
                    raise ValueError("duplicate dataset header")
                header = doc
            else:
                records.append(doc)
    if header is None:
        raise ValueError(f"{path}: missing dataset header")
    return header, records


def split_indices(n: int, seed: int,
                  fractions=(0.8, 0.1, 0.1)) -> dict[str, list[int]]:
    """Deterministic train/val/test split."""
    order = np.random.default_rng(seed).permutation(n)
    n_train = int(round(fractions[0] * n))
    n_val = int(round(fractions[1] * n))
    return {
        "train": sorted(int(i) for i in order[:n_train]),
        "val": sorted(int(i) for i in order[n_train:n_train + n_val]),
        "test": sorted(int(i) for i in order[n_train + n_val:]),
    }


def write_split_manifest(dataset_path: str | Path, seed: int, n: int) -> Path:
    path = Path(str(dataset_path) + ".splits.json")
    doc = {"dataset": Path(dataset_path).name, "seed": seed,
           "splits": split_indices(n, seed)}
    path.write_text(json.dumps(doc, sort_keys=True, indent=1))
    return path
