"""Named parameter store with a versioned binary weight container.

File layout: magic, u32 header length, JSON header (format version,
metadata, RNG state, tensor names and shapes in order), then the raw
little-endian float64 payload. Save/load round-trips bit-exactly.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .tensor import Tensor

MAGIC = b"GSWT"
FORMAT_VERSION = 1


class ModelParams:
    def __init__(self, meta: dict | None = None, seed: int = 0):
        self._tensors: dict[str, Tensor] = {}
        self.meta: dict = dict(meta or {})
        self.rng = np.random.default_rng(seed)

    def new(self, name: str, array: np.ndarray) -> Tensor:
        if name in self._tensors:
            raise KeyError(f"duplicate parameter name: {name}")
        t = Tensor(np.asarray(array, dtype=np.float64), requires_grad=True)
        self._tensors[name] = t
        return t

    def __getitem__(self, name: str) -> Tensor:
        return self._tensors[name]

    def __contains__(self, name: str) -> bool:
        return name in self._tensors

    def names(self) -> list[str]:
        return list(self._tensors)

    def items(self):
        return self._tensors.items()

    def n_values(self) -> int:
        return sum(t.data.size for t in self._tensors.values())

    def zero_grad(self) -> None:
        for t in self._tensors.values():
            t.grad = None

    def freeze(self) -> None:
        """Detach all tensors from gradient tracking (for frozen models)."""
        for t in self._tensors.values():
            t.requires_grad = False

    # ------------------------------------------------------------------ io

    def save(self, path: str | Path) -> None:
        header = {
            "format_version": FORMAT_VERSION,
            "meta": self.meta,
            "rng_state": _encode_rng(self.rng),
            "tensors": [{"name": n, "shape": list(t.data.shape)}
                        for n, t in self._tensors.items()],
        }
        blob = json.dumps(header, sort_keys=True).encode()
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<I", len(blob)))
            fh.write(blob)
            for t in self._tensors.values():
                fh.write(np.ascontiguousarray(t.data, dtype="<f8").tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "ModelParams":
        with open(path, "rb") as fh:
            if fh.read(4) != MAGIC:
                raise ValueError(f"{path}: not a weight container")
            (hlen,) = struct.unpack("<I", fh.read(4))
            header = json.loads(fh.read(hlen))
            if header["format_version"] != FORMAT_VERSION:
                raise ValueError(f"unsupported container version "
                                 f"{header['format_version']}")
            out = cls(meta=header["meta"])
            out.rng = _decode_rng(header["rng_state"])
            for spec in header["tensors"]:
                shape = tuple(spec["shape"])
                n = int(np.prod(shape)) if shape else 1
                buf = fh.read(8 * n)
                arr = np.frombuffer(buf, dtype="<f8").reshape(shape).copy()
                out.new(spec["name"], arr)
        return out

    def export_json(self, path: str | Path) -> None:
        doc = {
            "meta": self.meta,
            "tensors": {n: t.data.tolist() for n, t in self._tensors.items()},
        }
        Path(path).write_text(json.dumps(doc, sort_keys=True, indent=1))


def _encode_rng(rng: np.random.Generator) -> dict:
    state = rng.bit_generator.state
    return {
        "bit_generator": state["bit_generator"],
        "state": {k: str(v) for k, v in state["state"].items()},
        "has_uint32": state.get("has_uint32", 0),
        "uinteger": state.get("uinteger", 0),
    }


def _decode_rng(enc: dict) -> np.random.Generator:
    rng = np.random.default_rng(0)
    state = rng.bit_generator.state
    state["state"] = {k: int(v) for k, v in enc["state"].items()}
    state["has_uint32"] = enc["has_uint32"]
    state["uinteger"] = enc["uinteger"]
    rng.bit_generator.state = state
    return rng
