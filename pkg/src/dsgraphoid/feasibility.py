"""Exact rational linear feasibility: Gaussian elimination of equalities
followed by Fourier-Motzkin elimination of inequalities.

Constraints are affine rows ``sum(coef[i] * x[i]) + const`` compared with zero.
Pivots and elimination order always take the lowest variable index first, so
the result is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import config


@dataclass
class Row:
    coef: dict[int, Fraction]
    const: Fraction = Fraction(0)
    strict: bool = False

    def value(self, x: dict[int, Fraction]) -> Fraction:
        return self.const + sum((c * x.get(i, Fraction(0)) for i, c in self.coef.items()), Fraction(0))


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


@dataclass
class Result:
    status: Status
    solution: dict[int, Fraction] | None = None
    reason: str = ""
    n_free: int = 0


def row(coef: dict[int, object], const=0, strict=False) -> Row:
    return Row({i: Fraction(c) for i, c in coef.items() if c != 0}, Fraction(const), strict)


def _substitute(r: Row, var: int, expr: Row) -> Row:
    a = r.coef.get(var)
    if a is None:
        return r
    coef = dict(r.coef)
    del coef[var]
    for i, c in expr.coef.items():
        v = coef.get(i, Fraction(0)) + a * c
        if v:
            coef[i] = v
        else:
            coef.pop(i, None)
    return Row(coef, r.const + a * expr.const, r.strict)


def _normalized(r: Row) -> Row:
    if not r.coef:
        return r
    scale = abs(r.coef[min(r.coef)])
    return Row({i: c / scale for i, c in r.coef.items()}, r.const / scale, r.strict)


def _key(r: Row):
    return (tuple(sorted(r.coef.items())), r.const, r.strict)


def _violated_constant(r: Row) -> bool:
    return r.const < 0 or (r.strict and r.const == 0)


def solve(
    equalities: Iterable[Row] = (),
    inequalities: Iterable[Row] = (),
    cap: int | None = None,
    row_limit: int | None = None,
) -> Result:
    """Decide whether ``eq == 0`` and ``ineq >= 0`` (``> 0`` when strict) have a
    common rational solution; return one when they do."""
    settings = config.get()
    cap = settings.solver_cap if cap is None else cap
    row_limit = settings.fm_row_limit if row_limit is None else row_limit

    # Gaussian elimination.
    pivots: list[tuple[int, Row]] = []
    for eq in equalities:
        for var, expr in pivots:
            eq = _substitute(eq, var, expr)
        if not eq.coef:
            if eq.const != 0:
                return Result(Status.INFEASIBLE, reason=f"equality reduces to {eq.const} = 0")
            continue
        var = min(eq.coef)
        a = eq.coef[var]
        expr = Row({i: -c / a for i, c in eq.coef.items() if i != var}, -eq.const / a)
        pivots = [(v, _substitute(e, var, expr)) for v, e in pivots]
        pivots.append((var, expr))

    rows: list[Row] = []
    seen = set()
    for ineq in inequalities:
        for var, expr in pivots:
            ineq = _substitute(ineq, var, expr)
        if not ineq.coef:
            if _violated_constant(ineq):
                return Result(Status.INFEASIBLE, reason=f"inequality reduces to constant {ineq.const}")
            continue
        ineq = _normalized(ineq)
        k = _key(ineq)
        if k not in seen:
            seen.add(k)
            rows.append(ineq)

    variables = sorted({i for r in rows for i in r.coef} | {i for _, e in pivots for i in e.coef})
    if len(variables) > cap:
        return Result(Status.UNKNOWN, reason=f"{len(variables)} free variables exceed solver cap {cap}",
                      n_free=len(variables))

    # Fourier-Motzkin elimination, lowest index first.
    stages: list[tuple[int, list[Row]]] = []
    current = rows
    for var in sorted({i for r in rows for i in r.coef}):
        stages.append((var, current))
        pos = [r for r in current if r.coef.get(var, 0) > 0]
        neg = [r for r in current if r.coef.get(var, 0) < 0]
        nxt = [r for r in current if var not in r.coef]
        seen = {_key(r) for r in nxt}
        for p in pos:
            for n in neg:
                a, b = p.coef[var], -n.coef[var]
                coef = {}
                for i in set(p.coef) | set(n.coef):
                    if i == var:
                        continue
                    c = b * p.coef.get(i, Fraction(0)) + a * n.coef.get(i, Fraction(0))
                    if c:
                        coef[i] = c
                combo = Row(coef, b * p.const + a * n.const, p.strict or n.strict)
                if not combo.coef:
                    if _violated_constant(combo):
                        return Result(Status.INFEASIBLE, reason=f"eliminating x{var} yields {combo.const} >= 0",
                                      n_free=len(variables))
                    continue
                combo = _normalized(combo)
                k = _key(combo)
                if k not in seen:
                    seen.add(k)
                    nxt.append(combo)
        if len(nxt) > row_limit:
            return Result(Status.UNKNOWN, reason=f"Fourier-Motzkin stage exceeds {row_limit} rows",
                          n_free=len(variables))
        current = nxt

    x: dict[int, Fraction] = {}
    for var, stage_rows in reversed(stages):
        x[var] = _pick(var, stage_rows, x)
    for var in variables:
        x.setdefault(var, Fraction(0))
    for var, expr in reversed(pivots):
        x[var] = expr.value(x)
    return Result(Status.FEASIBLE, solution=x, n_free=len(variables))


def _pick(var: int, rows: list[Row], x: dict[int, Fraction]) -> Fraction:
    lo = hi = None
    lo_strict = hi_strict = False
    for r in rows:
        a = r.coef.get(var)
        if not a:
            continue
        rest = r.const + sum((c * x[i] for i, c in r.coef.items() if i != var), Fraction(0))
        bound = -rest / a
        if a > 0:
            if lo is None or bound > lo or (bound == lo and r.strict):
                lo, lo_strict = bound, r.strict
        else:
            if hi is None or bound < hi or (bound == hi and r.strict):
                hi, hi_strict = bound, r.strict
    if lo is not None and hi is not None:
        if lo == hi:
            return lo
        return (lo + hi) / 2 if (lo_strict or hi_strict) else lo
    if lo is not None:
        return lo + 1 if lo_strict else lo
    if hi is not None:
        return hi - 1 if hi_strict else min(hi, Fraction(0))
    return Fraction(0)
