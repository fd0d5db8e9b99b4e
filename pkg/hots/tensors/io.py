"""Tensor text format

    tensor3 n=<n>
    dangling <v_1> ... <v_n>      (optional, sparse tensors only)
    <i> <j> <k> <value>           (1-based, one line per nonzero)

Lines starting with ``#`` are comments. The writer emits entries sorted by
(k, j, i) with 17 significant digits.
"""

import logging
import re
from pathlib import Path
from typing import TextIO, Union

import numpy as np

from ..core.errors import InvalidInputError
from .dense import DenseTensor3
from .sparse import SparseTensor3
from .vectors import StochasticVector

logger = logging.getLogger(__name__)

HEADER = re.compile(r"^tensor3\s+n\s*=\s*(\d+)\s*$")


def read_tensor(source: Union[str, Path, TextIO], kind: str = "auto", dense_limit: int = 64):
    """Read a tensor file

    Args:
        source: path or open text stream
        kind: "dense", "sparse" or "auto" (dense when n <= dense_limit and
            the file has no dangling line)

    Dense reads keep pairs without entries at zero so validation can flag
    them; the dangling default applies to sparse reads only. Sparse reads
    require stochastic columns.
    """
    if kind not in ("auto", "dense", "sparse"):
        raise InvalidInputError(f"unknown tensor kind {kind!r}")
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise FileNotFoundError(f"Tensor file not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            return read_tensor(f, kind, dense_limit)

    n = None
    dangling = None
    rows = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            match = HEADER.match(line)
            if not match:
                raise InvalidInputError(f"line {lineno}: expected header 'tensor3 n=<n>', got {line!r}")
            n = int(match.group(1))
            if n < 1:
                raise InvalidInputError(f"line {lineno}: dimension must be positive")
            continue
        tokens = line.split()
        if tokens[0] == "dangling":
            if dangling is not None or rows:
                raise InvalidInputError(f"line {lineno}: dangling line must directly follow the header")
            try:
                dangling = StochasticVector([float(t) for t in tokens[1:]], tol=1e-10)
            except ValueError as e:
                raise InvalidInputError(f"line {lineno}: bad dangling vector: {e}") from e
            if dangling.n != n:
                raise InvalidInputError(f"line {lineno}: dangling vector has {dangling.n} entries, expected {n}")
            continue
        if len(tokens) != 4:
            raise InvalidInputError(f"line {lineno}: expected 'i j k value', got {line!r}")
        try:
            i, j, k = (int(t) for t in tokens[:3])
            value = float(tokens[3])
        except ValueError as e:
            raise InvalidInputError(f"line {lineno}: {e}") from e
        if not all(1 <= idx <= n for idx in (i, j, k)):
            raise InvalidInputError(f"line {lineno}: index out of range 1..{n}")
        rows.append((i - 1, j - 1, k - 1, value))

    if n is None:
        raise InvalidInputError("empty tensor file: missing 'tensor3 n=<n>' header")

    coords = np.array(rows, dtype=float).reshape(-1, 4)
    i, j, k = (coords[:, c].astype(np.int64) for c in range(3))
    values = coords[:, 3]

    if kind == "auto":
        kind = "dense" if n <= dense_limit and dangling is None else "sparse"
    logger.debug(f"Read tensor n={n} entries={len(rows)} as {kind}")

    if kind == "sparse":
        keep = values != 0.0
        return SparseTensor3(n, i[keep], j[keep], k[keep], values[keep], dangling)

    if dangling is not None:
        logger.debug("dangling line ignored for a dense read")
    arr = np.zeros((n, n, n))
    if len(set(zip(i.tolist(), j.tolist(), k.tolist()))) != len(rows):
        raise InvalidInputError("duplicate (i, j, k) entry")
    arr[i, j, k] = values
    return DenseTensor3(arr)


def write_tensor(T, target: Union[str, Path, TextIO]) -> None:
    """Write nonzero entries sorted by (k, j, i)"""
    if isinstance(target, (str, Path)):
        path = Path(target)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            write_tensor(T, f)
        return

    n = T.n
    target.write(f"tensor3 n={n}\n")
    if isinstance(T, SparseTensor3):
        d = T.dangling_default.values
        if T.stored_pairs < n * n:
            target.write("dangling " + " ".join(f"{v:.17g}" for v in d) + "\n")
        i, j, k, v = T.coordinates()
    else:
        arr = np.asarray(T.entries if isinstance(T, DenseTensor3) else T.to_dense().entries)
        # nonzero over the (k, j, i) transposed view yields the writer order
        k, j, i = np.nonzero(arr.transpose(2, 1, 0))
        v = arr[i, j, k]
    for a, b, c, val in zip(i, j, k, v):
        target.write(f"{a + 1} {b + 1} {c + 1} {val:.17g}\n")
