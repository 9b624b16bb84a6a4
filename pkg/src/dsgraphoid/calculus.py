"""Dempster combination, marginalization, vacuous extension, Shafer
conditioning and the commonality-level removal operator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _lattice as lat
from .errors import FrameError, NotNormalizable, RemovalUndefined, TotalConflict
from .frame import EventSet, Frame, as_varset, extend_mask, union_frame
from .massfun import CommonalityTable, MassFunction, marginal_masses, normalize


@dataclass(frozen=True)
class CombinationOutcome:
    result: MassFunction
    conflict: Fraction


def _align(m: MassFunction, frame: Frame) -> MassFunction:
    if m.frame == frame:
        return m
    return vacuous_extend(m, frame)


def combine(m1: MassFunction, m2: MassFunction) -> CombinationOutcome:
    """Dempster's rule.  Functions on different frames are first extended to
    the union frame.  ``conflict`` is the mass the normalized inputs send to
    the empty set."""
    frame = union_frame(m1.frame, m2.frame)
    mode = m1.mode
    a = normalize(_align(m1, frame), mode)
    b = normalize(_align(m2, frame), mode)
    acc: dict[int, Fraction] = {}
    conflict = Fraction(0)
    for k1, v1 in a.masses.items():
        for k2, v2 in b.masses.items():
            k = k1 & k2
            if k:
                acc[k] = acc.get(k, Fraction(0)) + v1 * v2
            else:
                conflict += v1 * v2
    raw = MassFunction(frame, acc, mode, check=False)
    try:
        result = normalize(raw, mode)
    except NotNormalizable:
        raise TotalConflict("every pair of focal sets is disjoint (or the masses cancel)") from None
    return CombinationOutcome(result, conflict)


def combine_all(functions: Iterable[MassFunction]) -> MassFunction:
    functions = list(functions)
    out = functions[0]
    for m in functions[1:]:
        out = combine(out, m).result
    return out


def project(m: MassFunction, w: Iterable[str] | str) -> MassFunction:
    """Marginal on the variables ``w`` (``w`` may be empty: the unit frame)."""
    target = m.frame.subframe(as_varset(m.frame, w))
    if target == m.frame:
        return normalize(m, m.mode)
    raw = MassFunction(target, marginal_masses(m, target), m.mode, check=False)
    return normalize(raw, m.mode)


def vacuous_extend(m: MassFunction, target: Frame) -> MassFunction:
    """Replace every focal set by its cylinder on ``target``."""
    if not m.frame.varset <= target.varset:
        raise FrameError(f"{target!r} does not contain the variables of {m.frame!r}")
    for v in m.frame.variables:
        if target.variable(v.name) != v:
            raise FrameError(f"variable {v.name!r} has a different domain in {target!r}")
    if target == m.frame:
        return m
    focal = {extend_mask(k, m.frame, target): v for k, v in m.masses.items()}
    return MassFunction(target, focal, m.mode, check=False)


def condition_shafer(m: MassFunction, evidence: EventSet) -> CombinationOutcome:
    """Combination with the point mass on ``evidence``."""
    if not evidence:
        raise FrameError("conditioning evidence must be nonempty")
    return combine(m, MassFunction.point(evidence, m.mode))


def removal_constant(sigma: CommonalityTable, rho: CommonalityTable) -> Fraction:
    """K = sum over nonempty a with rho(a) > 0 of (-1)^(|a|+1) sigma(a) / rho(a)."""
    if sigma.frame != rho.frame:
        raise FrameError("removal needs tables on the same frame")
    k = Fraction(0)
    pc = lat.popcounts(sigma.frame.size)
    for a in np.flatnonzero(rho.num > 0):
        a = int(a)
        if a == 0:
            continue
        term = Fraction(int(sigma.num[a]) * rho.den, sigma.den * int(rho.num[a]))
        k += term if pc[a] % 2 else -term
    return k


def remove_shenoy(sigma: CommonalityTable, rho: CommonalityTable) -> CommonalityTable:
    """``(sigma - rho)(a) = sigma(a) / (K rho(a))`` where ``rho(a) > 0``, zero elsewhere."""
    k = removal_constant(sigma, rho)
    if k <= 0:
        raise RemovalUndefined(f"removal constant K = {k} is not positive")
    values = {}
    for a in np.flatnonzero(rho.num > 0):
        a = int(a)
        if a:
            values[a] = Fraction(int(sigma.num[a]) * rho.den, sigma.den * int(rho.num[a])) / k
    return CommonalityTable.from_values(sigma.frame, values, default=0)
