"""Dense and sparse transforms on the subset lattice of a frame.

Dense arrays are indexed by configuration bit mask and hold exact integers
(``int64`` when a magnitude bound allows it, Python ints in an ``object``
array otherwise).  Rational data is carried as integer numerators over one
shared denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import config
from .errors import LatticeTooLarge
from .frame import Frame, bits, fiber_masks, projection_map

_I64_SAFE = 1 << 62


def check_gate(frame: Frame, what: str = "dense lattice"):
    gate = config.get().lattice_gate
    if frame.size > gate:
        raise LatticeTooLarge(f"{what} over {frame.size} configurations exceeds lattice gate {gate}")


def common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(1, *{Fraction(v).denominator for v in values})


def scaled(values: Mapping[int, Fraction]) -> tuple[dict[int, int], int]:
    """Integer numerators over a shared denominator."""
    d = common_denominator(values.values())
    return {k: int(v * d) for k, v in values.items()}, d


def dense(ints: Mapping[int, int], n_configs: int, bound: int | None = None) -> np.ndarray:
    """Dense array over all ``2**n_configs`` masks with the given nonzero entries.

    ``bound`` is an upper bound on the magnitude of anything later computed in
    the array; it selects ``int64`` when safe.
    """
    if bound is None:
        bound = sum(abs(v) for v in ints.values()) << 1
    dtype = np.int64 if bound < _I64_SAFE else object
    arr = np.zeros(1 << n_configs, dtype=dtype)
    if dtype is object:
        arr[:] = 0
    for k, v in ints.items():
        arr[k] += v
    return arr


def zeta_up(arr: np.ndarray) -> np.ndarray:
    """In place: ``arr[A] <- sum of arr[B] over B containing A``."""
    n = arr.shape[0].bit_length() - 1
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 0, :] += view[:, 1, :]
    return arr


def mobius_up(arr: np.ndarray) -> np.ndarray:
    """In place inverse of :func:`zeta_up`."""
    n = arr.shape[0].bit_length() - 1
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 0, :] -= view[:, 1, :]
    return arr


def mobius_down(arr: np.ndarray) -> np.ndarray:
    """In place: ``arr[A] <- sum over B subset of A of (-1)^|A-B| arr[B]``."""
    n = arr.shape[0].bit_length() - 1
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return arr


def widen(arr: np.ndarray, factor_bound: int) -> np.ndarray:
    """Return ``arr`` as object dtype if multiplying by ``factor_bound`` may overflow."""
    if arr.dtype == object:
        return arr
    peak = int(np.abs(arr).max()) if arr.size else 0
    if peak * max(1, factor_bound) >= _I64_SAFE:
        return arr.astype(object)
    return arr


def exact_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object:
        pa = int(np.abs(a).max()) if a.size else 0
        pb = int(np.abs(b).max()) if b.size else 0
        if pa * pb < _I64_SAFE:
            return a * b
    return a.astype(object) * b.astype(object)


@lru_cache(maxsize=256)
def mask_projection(source: Frame, target: Frame) -> np.ndarray:
    """Projected mask (over ``target``) of every mask of ``source``."""
    check_gate(source)
    if target.size >= 63:
        raise LatticeTooLarge("projection target too large for vectorized masks")
    pm = projection_map(source, target)
    out = np.zeros(1 << source.size, dtype=np.int64)
    for i in range(source.size):
        lo = 1 << i
        out[lo:2 * lo] = out[:lo] | (1 << pm[i])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=256)
def cylinder_array(source: Frame, target: Frame) -> np.ndarray:
    """Cylinder mask in ``source`` of every mask of the subframe ``target``."""
    check_gate(target)
    if source.size >= 63:
        raise LatticeTooLarge("cylinder source too large for vectorized masks")
    fib = fiber_masks(source, target)
    out = np.zeros(1 << target.size, dtype=np.int64)
    for j in range(target.size):
        lo = 1 << j
        out[lo:2 * lo] = out[:lo] | fib[j]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def popcounts(n_configs: int) -> np.ndarray:
    out = np.zeros(1 << n_configs, dtype=np.int64)
    for i in range(n_configs):
        lo = 1 << i
        out[lo:2 * lo] = out[:lo] + 1
    out.setflags(write=False)
    return out


def submasks(mask: int) -> np.ndarray:
    """All submasks of ``mask`` (including 0 and ``mask``) as an int64 array."""
    out = np.zeros(1, dtype=np.int64)
    for b in bits(mask):
        out = np.concatenate([out, out | (1 << b)])
    return out


# -- sparse helpers (down-closed families stored as dicts) -------------------

def down_closure(masks: Iterable[int], limit: int) -> set[int]:
    """All nonempty subsets of the given masks; raises above ``limit`` members."""
    family: set[int] = set()
    for m in sorted(set(masks), key=lambda x: -x.bit_count()):
        if m in family:
            continue
        if (1 << m.bit_count()) - 1 > limit:
            raise LatticeTooLarge(f"down-closure of a {m.bit_count()}-element set exceeds the gate")
        sub = m
        while sub:
            family.add(sub)
            sub = (sub - 1) & m
        if len(family) > limit:
            raise LatticeTooLarge("sparse lattice family exceeds the gate")
    return family


def sparse_zeta(masses: Mapping[int, Fraction], family: Iterable[int]) -> dict[int, Fraction]:
    """Commonality of every member of ``family`` from a sparse mass map."""
    items = list(masses.items())
    out = {}
    for a in family:
        out[a] = sum((v for b, v in items if a & ~b == 0), Fraction(0))
    return out


def sparse_mobius(q: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Inverse superset transform for a function supported on a down-closed family.

    Values outside the family are taken to be zero; the family must be closed
    under taking nonempty subsets.
    """
    vals = dict(q)
    union = 0
    for a in vals:
        union |= a
    for b in bits(union):
        bit = 1 << b
        for a in list(vals):
            if not a & bit:
                sup = vals.get(a | bit)
                if sup:
                    vals[a] = vals[a] - sup
    return {a: v for a, v in vals.items() if v != 0}
