"""Seeded random instances in three weight regimes."""

from __future__ import annotations

import numpy as np

from .core import Instance
from .errors import MalformedInputError


def parse_dist(spec: str) -> tuple[str, tuple[int, ...]]:
    """``uniform:LO:HI``, ``euclidean:BOX`` or ``onetwo``."""
    parts = spec.split(":")
    kind = parts[0]
    try:
        args = tuple(int(x) for x in parts[1:])
    except ValueError:
        raise MalformedInputError(f"bad distribution {spec!r}: arguments must be integers") from None
    if kind == "uniform" and len(args) == 2 and 0 <= args[0] <= args[1]:
        return kind, args
    if kind == "euclidean" and len(args) == 1 and args[0] > 0:
        return kind, args
    if kind == "onetwo" and not args:
        return kind, args
    raise MalformedInputError(f"bad distribution {spec!r}; use uniform:LO:HI, euclidean:BOX or onetwo")


def random_instance(n: int, dist: str = "uniform:0:100", seed: int = 0, name: str = "") -> Instance:
    """Symmetric instance drawn from ``dist`` with ``numpy.random.default_rng(seed)``.

    ``euclidean:BOX`` places points uniformly in ``[0, BOX)^2`` and rounds
    their distances to integers.
    """
    if n < 3:
        raise MalformedInputError(f"need n >= 3, got {n}")
    kind, args = parse_dist(dist)
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        W = rng.integers(args[0], args[1] + 1, size=(n, n), dtype=np.int64)
    elif kind == "onetwo":
        W = rng.integers(1, 3, size=(n, n), dtype=np.int64)
    else:
        pts = rng.uniform(0, args[0], size=(n, 2))
        diff = pts[:, None, :] - pts[None, :, :]
        W = np.rint(np.sqrt((diff**2).sum(-1))).astype(np.int64)
    W = np.triu(W, 1)
    W = W + W.T
    return Instance(W, name=name or f"{kind}-n{n}-s{seed}")
