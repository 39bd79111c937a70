"""JSON documents for codes and flags, tagged by ``"kind"``.

Every document carries the field as ``p``, ``m`` and ``modulus`` (low-to-high
coefficients).  Matrix entries are integer field codes.
"""

from __future__ import annotations

import json
from typing import Any, Union

import numpy as np

from flagrank.classiccodes import HammingCode, RankMetricCode
from flagrank.errors import InvalidInput
from flagrank.flagcodes import UTCode
from flagrank.flagspace import DegenerateFlag
from flagrank.gf import field_from_json
from flagrank.linalg import Mat

Document = Union[UTCode, HammingCode, RankMetricCode, DegenerateFlag]


def to_json(obj: Document) -> dict:
    if isinstance(obj, UTCode):
        return {
            "kind": "utcode",
            **obj.field.to_json(),
            "n": obj.n,
            "basis": [B.data.reshape(-1).tolist() for B in obj.basis],
        }
    if isinstance(obj, HammingCode):
        return {
            "kind": "hamming",
            **obj.field.to_json(),
            "length": obj.length,
            "generator": obj.generator.data.reshape(-1, obj.length).tolist(),
        }
    if isinstance(obj, RankMetricCode):
        return {
            "kind": "rankmetric",
            **obj.field.to_json(),
            "shape": list(obj.shape),
            "basis": [B.data.reshape(-1).tolist() for B in obj.basis],
        }
    if isinstance(obj, DegenerateFlag):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrices(F, rows: Any, r: int, c: int) -> list[Mat]:
    out = []
    for v in rows:
        a = np.array(v, dtype=np.int64)
        if a.size != r * c:
            raise InvalidInput(f"matrix has {a.size} entries, expected {r}x{c}")
        out.append(Mat(F, a.reshape(r, c)))
    return out


def from_json(d: dict) -> Document:
    if not isinstance(d, dict) or "kind" not in d:
        raise InvalidInput("document must be an object with a 'kind' tag")
    F = field_from_json(d)
    kind = d["kind"]
    try:
        if kind == "utcode":
            n = int(d["n"])
            return UTCode(F, n, tuple(_matrices(F, d["basis"], n, n)))
        if kind == "hamming":
            length = int(d["length"])
            G = np.array(d["generator"], dtype=np.int64).reshape(-1, length)
            return HammingCode(F, length, Mat(F, G))
        if kind == "rankmetric":
            r, c = (int(x) for x in d["shape"])
            return RankMetricCode(F, (r, c), tuple(_matrices(F, d["basis"], r, c)))
        if kind == "flag":
            return DegenerateFlag.from_blocks(F, d["levels"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed {kind} document: {exc}") from exc
    raise InvalidInput(f"unknown kind {kind!r}")


def dumps(obj: Document) -> str:
    return json.dumps(to_json(obj))


def loads(text: str) -> Document:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"invalid JSON: {exc}") from exc
    return from_json(d)
