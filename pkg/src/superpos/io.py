"""JSON encodings for operators, decompositions and channels.

Numbers are written with 17 significant digits so that every double
survives a round trip unchanged.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import KrausChannel
from .core import Decomposition, make_density
from .errors import DimensionMismatch, SuperposError


class FormatError(SuperposError):
    """Malformed JSON document."""


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _entries(A: np.ndarray) -> str:
    flat = np.asarray(A, dtype=complex).ravel()
    return "[" + ", ".join(f"[{_num(z.real)}, {_num(z.imag)}]" for z in flat) + "]"


def dumps_operator(A) -> str:
    A = np.asarray(A, dtype=complex)
    return f'{{"dim": {A.shape[0]}, "entries": {_entries(A)}}}'


def dumps_decomposition(L: Decomposition) -> str:
    return json.dumps({"dims": list(L.dims)})


def dumps_channel(phi: KrausChannel) -> str:
    ks = ", ".join(_entries(K) for K in phi.kraus)
    return f'{{"dim": {phi.dim}, "kraus": [{ks}]}}'


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("top-level JSON value must be an object")
    return doc


def _matrix(dim, entries) -> np.ndarray:
    if not isinstance(dim, int) or dim < 1:
        raise FormatError(f"dim must be a positive integer, got {dim!r}")
    try:
        arr = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError("entries must be [re, im] number pairs") from exc
    if arr.shape != (dim * dim, 2):
        raise DimensionMismatch(f"expected {dim * dim} [re, im] pairs, got shape {arr.shape}")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(dim, dim)


def loads_operator(text: str) -> np.ndarray:
    doc = _load(text)
    if "dim" not in doc or "entries" not in doc:
        raise FormatError("operator JSON needs 'dim' and 'entries'")
    return _matrix(doc["dim"], doc["entries"])


def loads_state(text: str) -> np.ndarray:
    """Parse and validate a density operator."""
    return make_density(loads_operator(text))


def loads_decomposition(text: str) -> Decomposition:
    doc = _load(text)
    if "dims" not in doc:
        raise FormatError("decomposition JSON needs 'dims'")
    return Decomposition(doc["dims"])


def loads_channel(text: str) -> KrausChannel:
    doc = _load(text)
    if "dim" not in doc or "kraus" not in doc or not isinstance(doc["kraus"], list):
        raise FormatError("channel JSON needs 'dim' and a 'kraus' list")
    return KrausChannel([_matrix(doc["dim"], k) for k in doc["kraus"]])


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
