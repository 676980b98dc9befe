"""Serialization helpers shared by the CLI: lossless JSON encoding of exact
values and atomic file writes (temp-then-rename, never a partial file)."""

from __future__ import annotations

import dataclasses
import json
import math
import os
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from .domains import BlockStructure
from .polynomials import ModuliPolynomial, MonomialMap
from .radicals import Radical

__all__ = ["SCHEMA_VERSION", "to_jsonable", "dumps", "write_json_atomic", "write_text_atomic"]

SCHEMA_VERSION = 1


def to_jsonable(obj):
    """Recursively convert to JSON-encodable data.

    Rationals become strings "p/q" (lossless round-trip), radicals their
    canonical string, complex numbers {re, im} pairs, infinities the string
    "infinite".
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "infinite" if obj > 0 else "-infinite"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Radical):
        return str(obj)
    if isinstance(obj, complex):
        return {"re": to_jsonable(obj.real), "im": to_jsonable(obj.imag)}
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return to_jsonable(float(obj))
    if isinstance(obj, (np.complexfloating,)):
        return to_jsonable(complex(obj))
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, ModuliPolynomial):
        return str(obj)
    if isinstance(obj, MonomialMap):
        return {
            "scalars": [to_jsonable(s) for s in obj.scalars],
            "matrix": [list(row) for row in obj.matrix],
        }
    if isinstance(obj, BlockStructure):
        return [list(g) for g in obj.to_one_based()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [to_jsonable(x) for x in items]
    if hasattr(obj, "__str__"):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def dumps(payload) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n"


def _atomic_write(path: Path, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)  # mkstemp defaults to 0600
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_json_atomic(path, payload) -> None:
    _atomic_write(Path(path), dumps(payload))


def write_text_atomic(path, text: str) -> None:
    _atomic_write(Path(path), text)
