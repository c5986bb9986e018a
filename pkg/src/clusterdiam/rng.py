"""Deterministic keyed randomness.

Everything random in this package flows through :class:`Rng`: a stateless,
counter-based generator built on the splitmix64 finalizer.  Draws are keyed
by integers (node ids, edge endpoints, stage numbers), so results never
depend on iteration order, platform, or thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Rng"]

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
# 2**-53: top 53 bits of a u64 mapped to [0, 1)
_INV53 = float(2.0**-53)


def _mix(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer; uint64 wraparound is intentional."""
    x = (x ^ (x >> np.uint64(30))) * _MIX1
    x = (x ^ (x >> np.uint64(27))) * _MIX2
    return x ^ (x >> np.uint64(31))


def _mix_int(x: int) -> int:
    """Scalar splitmix64 finalizer on plain ints (no numpy overflow noise)."""
    x &= 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


@dataclass(frozen=True)
class Rng:
    """Splittable keyed generator.

    ``derive(*tags)`` produces an independent substream; draw methods hash
    caller-supplied integer keys (e.g. node ids) against the stream key.
    """

    key: int
    algorithm: str = "splitmix64"

    def __post_init__(self) -> None:
        if self.algorithm != "splitmix64":
            raise ValueError(f"unknown rng algorithm {self.algorithm!r}")
        object.__setattr__(self, "key", int(self.key) & 0xFFFFFFFFFFFFFFFF)

    def derive(self, *tags: int) -> "Rng":
        k = self.key
        for t in tags:
            step = (0x9E3779B97F4A7C15 * ((int(t) & 0xFFFFFFFFFFFFFFFF) + 1)) & 0xFFFFFFFFFFFFFFFF
            k = _mix_int(k + step)
        return Rng(k)

    def _hash_ids(self, ids: np.ndarray) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.uint64)
        return _mix(np.uint64(self.key) + _GOLDEN * (ids + np.uint64(1)))

    def u01(self, ids: np.ndarray) -> np.ndarray:
        """Uniform floats in [0, 1), one per integer key in ``ids``."""
        h = self._hash_ids(ids)
        return (h >> np.uint64(11)).astype(np.float64) * _INV53

    def u01_open_closed(self, ids: np.ndarray) -> np.ndarray:
        """Uniform floats in (0, 1], one per integer key."""
        return 1.0 - self.u01(ids)

    def coins(self, ids: np.ndarray, p: float) -> np.ndarray:
        """Independent Bernoulli(p) coins keyed by ``ids``."""
        return self.u01(ids) < p

    def pair_u01(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Uniform floats in [0, 1) keyed by integer pairs (a[i], b[i])."""
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        h = _mix(np.uint64(self.key) + _GOLDEN * (a + np.uint64(1)))
        h = _mix(h ^ (_GOLDEN * (b + np.uint64(1))))
        return (h >> np.uint64(11)).astype(np.float64) * _INV53

    def randint(self, bound: int, tag: int = 0) -> int:
        """One integer in [0, bound) from this stream."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        u = float(self.u01(np.array([tag], dtype=np.uint64))[0])
        return min(int(u * bound), bound - 1)
