"""Anticonditionals, compressible independence and the independence tests.

Most procedures here work at the commonality level.  If ``Bel = Bel^p (+) X``
then ``Q(A) = k * Q_p(A_p) * Q_X(A)`` for every nonempty ``A``, where ``A_p``
is the projection of ``A`` on ``p`` and ``Q_p`` the commonality of the
marginal.  Wherever ``Q_p(A_p)`` is nonzero the value ``Q_X(A)`` is pinned
to ``Q(A) / Q_p(A_p)`` up to one global constant; elsewhere it is free.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import _lattice as lat
from . import config
from . import feasibility as fz
from .calculus import combine, project, vacuous_extend
from .errors import (
    FrameError,
    InconsistentOracles,
    LatticeTooLarge,
    NoAnticonditional,
    NoCanonicalMember,
    TotalConflict,
)
from .frame import EventSet, Frame, as_varset, project_mask
from .massfun import (
    CommonalityTable,
    MassFunction,
    is_diverse,
    mass_from_commonality,
    marginal_masses,
    normalize,
)


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE


class Method(enum.Enum):
    UNCONDITIONAL = "unconditional"
    SHENOY = "shenoy"
    INTRINSIC = "intrinsic"
    CANO = "cano"


@dataclass(frozen=True)
class CompressiblyIndependentOf:
    variables: frozenset


@dataclass(frozen=True)
class CanoVacuousOn:
    variables: frozenset


@dataclass(frozen=True)
class FactorizationWitness:
    """``left (+) right`` reproduces the function; ``scale`` relates the
    normalized commonalities: ``Q(A) = scale * Q_left(A) * Q_right(A)``."""

    left: MassFunction
    right: MassFunction
    scale: Fraction


@dataclass(frozen=True)
class IndependenceReport:
    method: Method
    q: frozenset
    r: frozenset
    p: frozenset
    verdict: Verdict
    witness: FactorizationWitness | None = None
    violation: str | None = None
    diversity: bool | None = None
    # factorization verdict before the diversity gate (intrinsic method only)
    factorizable: Verdict | None = None

    def __bool__(self):
        return self.verdict is Verdict.TRUE


@dataclass(frozen=True)
class SolveResult:
    status: str  # "found" | "infeasible" | "unknown"
    member: MassFunction | None = None
    reason: str = ""
    n_free: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    recombined: MassFunction | None
    mass_mismatches: tuple[tuple[EventSet, Fraction, Fraction], ...] = ()
    q_mismatches: tuple[tuple[EventSet, Fraction, Fraction], ...] = ()
    conflict: Fraction | None = None
    reason: str = ""


def _fmt(frame: Frame, mask: int) -> str:
    return repr(EventSet(frame, mask))


# -- commonality ratio data ---------------------------------------------------

def _marginal_dense_q(m: MassFunction, target: Frame) -> np.ndarray:
    """Commonality of the unnormalized marginal, on the integer scale of ``m.dense_q``."""
    key = ("marginal_q", target)
    cached = m._cache.get(key)
    if cached is None:
        arr, d = m.dense_q()
        ints = {k: int(v * d) for k, v in marginal_masses(m, target).items()}
        cached = lat.zeta_up(lat.dense(ints, target.size))
        cached.setflags(write=False)
        m._cache[key] = cached
    return cached


def _ratio_data(m: MassFunction, p: frozenset) -> tuple[np.ndarray, np.ndarray, Frame]:
    """Dense ``Q`` and the conditioning denominators ``Q_p(A_p)`` for every mask."""
    q, _ = m.dense_q()
    fp = m.frame.subframe(p)
    den = _marginal_dense_q(m, fp)[lat.mask_projection(m.frame, fp)]
    return q, den, fp


def _ratio_ints(q: np.ndarray, den: np.ndarray) -> tuple[np.ndarray, int]:
    """Numerators of ``q / den`` (zero where ``den`` vanishes) over one denominator."""
    nz = np.flatnonzero(den)
    scale = math.lcm(1, *{abs(int(x)) for x in np.unique(den[nz])})
    out = np.zeros(q.shape[0], dtype=object)
    out[:] = 0
    if nz.size:
        mult = np.array([scale // int(d) for d in den[nz]], dtype=object)
        out[nz] = q[nz].astype(object) * mult
    return out, scale


def _check_pinned(m: MassFunction, q: np.ndarray, den: np.ndarray):
    bad = np.flatnonzero((q != 0) & (den == 0))
    bad = bad[bad != 0]
    if bad.size:
        a = int(bad[0])
        raise NoAnticonditional(
            f"Q{_fmt(m.frame, a)} = {Fraction(int(q[a]), m.dense_q()[1])} but the conditioning marginal vanishes there"
        )


def _member_from_q(frame: Frame, num: np.ndarray, den: int, mode) -> MassFunction:
    table = CommonalityTable(frame, num, den)
    return normalize(mass_from_commonality(table, mode), mode)


def _gated(frame: Frame) -> bool:
    return frame.size <= config.get().lattice_gate


def _sparse_setup(m: MassFunction, p: frozenset):
    """Sparse commonality of ``m`` on the down-closure of its focal sets, with denominators."""
    limit = 1 << config.get().lattice_gate
    family = lat.down_closure(m.masses, limit)
    qv = lat.sparse_zeta(m.masses, family)
    fp = m.frame.subframe(p)
    marg = marginal_masses(m, fp)
    dens = {}
    for a in family:
        b = project_mask(a, m.frame, fp)
        dens[a] = sum((v for k, v in marg.items() if b & ~k == 0), Fraction(0))
    return qv, dens, fp


# -- anticonditionals -------------------------------------------------------------

def anticonditional_canonical(m: MassFunction, p: Iterable[str] | str) -> MassFunction:
    """The zero-filled anticonditional: ``Q_X(A) = Q(A) / Q_p(A_p)`` where the
    denominator is nonzero and ``0`` elsewhere, Mobius-inverted and normalized."""
    p = as_varset(m.frame, p)
    if _gated(m.frame):
        q, den, _ = _ratio_data(m, p)
        _check_pinned(m, q, den)
        sign = lat.exact_product(q, den)
        neg = np.flatnonzero(sign[1:] < 0)
        if neg.size:
            a = int(neg[0]) + 1
            raise NoCanonicalMember(f"pinned commonality is negative at {_fmt(m.frame, a)}", violated=a)
        num, scale = _ratio_ints(q, den)
        num[0] = 0
        member = _member_from_q(m.frame, num, scale, m.mode)
    else:
        qv, dens, _ = _sparse_setup(m, p)
        values = {}
        for a, qa in qv.items():
            if dens[a] == 0:
                if qa != 0:
                    raise NoAnticonditional(f"Q{_fmt(m.frame, a)} = {qa} but the conditioning marginal vanishes there")
                values[a] = Fraction(0)
                continue
            values[a] = qa / dens[a]
            if values[a] < 0:
                raise NoCanonicalMember(f"pinned commonality is negative at {_fmt(m.frame, a)}", violated=a)
        masses = lat.sparse_mobius(values)
        member = normalize(MassFunction(m.frame, masses, m.mode), m.mode)
    check = anticonditional_verify(m, p, member)
    if not check.valid:
        raise NoCanonicalMember(f"zero-filled member does not recombine: {check.reason}")
    return member


def anticonditional_verify(m: MassFunction, p: Iterable[str] | str, candidate: MassFunction) -> VerifyResult:
    """Check ``m == m^p (+) candidate`` exactly and describe any residual."""
    p = as_varset(m.frame, p)
    if not candidate.frame.varset <= m.frame.varset:
        raise FrameError("candidate lives outside the function's frame")
    marginal = project(m, p)
    try:
        outcome = combine(marginal, candidate)
    except TotalConflict:
        return VerifyResult(False, None, reason="total conflict on recombination")
    rec = vacuous_extend(outcome.result, m.frame) if outcome.result.frame.varset != m.frame.varset else outcome.result
    rec = normalize(rec.with_frame(m.frame), m.mode)
    target = normalize(m, m.mode)
    masks = sorted(set(rec.masses) | set(target.masses))
    mass_mm = tuple(
        (EventSet(m.frame, k), target.masses.get(k, Fraction(0)), rec.masses.get(k, Fraction(0)))
        for k in masks
        if target.masses.get(k, Fraction(0)) != rec.masses.get(k, Fraction(0))
    )
    q_mm = _q_residual(target, rec) if mass_mm else ()
    reason = "" if not mass_mm else f"{len(mass_mm)} focal masses differ"
    return VerifyResult(not mass_mm, rec, mass_mm, q_mm, outcome.conflict, reason)


def _q_residual(target: MassFunction, rec: MassFunction):
    """Sets whose commonality differs, with the expected and recombined values."""
    frame = target.frame
    if _gated(frame):
        qa, da = target.dense_q()
        qb, db = rec.dense_q()
        lhs = lat.exact_product(qa, np.asarray(db))
        rhs = lat.exact_product(qb, np.asarray(da))
        diff = np.flatnonzero(lhs != rhs)
        return tuple(
            (EventSet(frame, int(a)), Fraction(int(qa[a]), da), Fraction(int(qb[a]), db)) for a in diff if a
        )
    limit = 1 << config.get().lattice_gate
    try:
        family = lat.down_closure(list(target.masses) + list(rec.masses), limit)
    except LatticeTooLarge:
        return ()
    out = []
    for a in sorted(family):
        x, y = target.q(a), rec.q(a)
        if x != y:
            out.append((EventSet(frame, a), x, y))
    return tuple(out)


def anticonditional_free_sets(m: MassFunction, p: Iterable[str] | str) -> list[EventSet]:
    """Sets at which the anticonditional's commonality is not pinned down."""
    p = as_varset(m.frame, p)
    q, den, _ = _ratio_data(m, p)
    return [EventSet(m.frame, int(a)) for a in np.flatnonzero(den == 0) if a]


def anticonditional_member(m: MassFunction, p: Iterable[str] | str, fill: Mapping) -> MassFunction:
    """The family member taking the values ``fill`` (nonnegative) at free sets."""
    p = as_varset(m.frame, p)
    q, den, _ = _ratio_data(m, p)
    _check_pinned(m, q, den)
    num, scale = _ratio_ints(q, den)
    d = lat.common_denominator(fill.values())
    num = num * d
    scale *= d
    for key, value in fill.items():
        a = key.mask if isinstance(key, EventSet) else int(key)
        if a == 0 or den[a] != 0:
            raise ValueError(f"{_fmt(m.frame, a)} is not a free set")
        value = Fraction(value)
        if value < 0:
            raise ValueError("free commonality values must be nonnegative")
        num[a] = int(value * scale)
    num[0] = 0
    return _member_from_q(m.frame, num, scale, m.mode)


def anticonditional_solve(
    m: MassFunction,
    p: Iterable[str] | str,
    constraint: CompressiblyIndependentOf | CanoVacuousOn | None = None,
    *,
    proper: bool = False,
) -> SolveResult:
    """Search the anticonditional family given ``p`` for a member meeting ``constraint``."""
    p = as_varset(m.frame, p)
    if isinstance(constraint, CompressiblyIndependentOf) and not proper:
        q = as_varset(m.frame, constraint.variables)
        return _solve_compressible(m, p, q)
    if constraint is None and not proper:
        try:
            return SolveResult("found", anticonditional_canonical(m, p))
        except (NoAnticonditional, NoCanonicalMember) as exc:
            return SolveResult("infeasible", reason=str(exc))
    if not _gated(m.frame):
        raise LatticeTooLarge("linear-feasibility search needs a gated frame")
    return _solve_linear(m, p, constraint, proper)


def _solve_compressible(m: MassFunction, p: frozenset, q: frozenset) -> SolveResult:
    keep = m.frame.subframe(m.frame.varset - q)
    if _gated(m.frame):
        qa, den, _ = _ratio_data(m, p)
        try:
            _check_pinned(m, qa, den)
        except NoAnticonditional as exc:
            return SolveResult("infeasible", reason=str(exc))
        fixed = np.flatnonzero(den != 0)
        fixed = fixed[fixed != 0]
        qf, df = qa[fixed], den[fixed]
        if np.any(lat.exact_product(qf, df) < 0):
            return SolveResult("infeasible", reason="a pinned commonality value is negative")
        key = lat.mask_projection(m.frame, keep)[fixed]
        uniq, first = np.unique(key, return_index=True)
        rep = fixed[first]
        rep_of = rep[np.searchsorted(uniq, key)]
        lhs = lat.exact_product(qf, den[rep_of])
        rhs = lat.exact_product(qa[rep_of], df)
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            a, b = int(fixed[bad[0]]), int(rep_of[bad[0]])
            return SolveResult(
                "infeasible",
                reason=f"{_fmt(m.frame, a)} and {_fmt(m.frame, b)} share a projection but pin different values",
            )
        values = {int(u): Fraction(int(qa[r]), int(den[r])) for u, r in zip(uniq, rep) if qa[r] != 0}
        table = CommonalityTable.from_values(keep, values)
        compressed = normalize(mass_from_commonality(table, m.mode), m.mode)
        return SolveResult("found", normalize(vacuous_extend(compressed, m.frame), m.mode))

    qv, dens, _ = _sparse_setup(m, p)
    values: dict[int, Fraction] = {}
    for a in sorted(qv):
        qa = qv[a]
        if qa == 0:
            continue
        if dens[a] == 0:
            return SolveResult("infeasible", reason=f"Q{_fmt(m.frame, a)} = {qa} but the conditioning marginal vanishes")
        ratio = qa / dens[a]
        if ratio < 0:
            return SolveResult("infeasible", reason="a pinned commonality value is negative")
        b = project_mask(a, m.frame, keep)
        if values.setdefault(b, ratio) != ratio:
            return SolveResult("infeasible", reason=f"sets projecting to {_fmt(keep, b)} pin different values")
    limit = 1 << config.get().lattice_gate
    family = lat.down_closure(values, limit)
    masses = lat.sparse_mobius({b: values.get(b, Fraction(0)) for b in family})
    compressed = normalize(MassFunction(keep, masses, m.mode), m.mode)
    member = normalize(vacuous_extend(compressed, m.frame), m.mode)
    # Every fixed-zero set must agree too; recombination checks all of them at once.
    if not anticonditional_verify(m, p, member).valid:
        return SolveResult("infeasible", reason="a set with vanishing commonality shares a projection with a pinned one")
    return SolveResult("found", member)


def _solve_linear(m: MassFunction, p: frozenset, constraint, proper: bool) -> SolveResult:
    qa, den, _ = _ratio_data(m, p)
    try:
        _check_pinned(m, qa, den)
    except NoAnticonditional as exc:
        return SolveResult("infeasible", reason=str(exc))
    if np.any(lat.exact_product(qa, den)[1:] < 0):
        return SolveResult("infeasible", reason="a pinned commonality value is negative")
    frame = m.frame
    free = [int(a) for a in np.flatnonzero(den == 0) if a]
    cap = config.get().solver_cap
    if len(free) > cap:
        return SolveResult("unknown", reason=f"{len(free)} free commonality values exceed solver cap {cap}",
                           n_free=len(free))
    num, scale = _ratio_ints(qa, den)
    num[0] = 0
    const_mass = lat.mobius_up(num.copy())  # masses of the pinned part, times ``scale``
    var_of = {a: i for i, a in enumerate(free)}
    pc = lat.popcounts(frame.size)

    # mass coefficient rows: m_X(B) = const_mass[B]/scale + sum over free A >= B of (-1)^|A-B| x_A
    mass_rows: dict[int, dict[int, int]] = {}
    for a in free:
        for b in lat.submasks(a)[1:]:
            b = int(b)
            sign = -1 if (pc[a] - pc[b]) % 2 else 1
            mass_rows.setdefault(b, {})[var_of[a]] = sign

    def mass_row(b: int) -> fz.Row:
        return fz.row(mass_rows.get(b, {}), Fraction(int(const_mass[b]), scale))

    equalities: list[fz.Row] = []
    inequalities: list[fz.Row] = [fz.row({i: 1}) for i in range(len(free))]
    if isinstance(constraint, CanoVacuousOn):
        h = as_varset(frame, constraint.variables)
        fh = frame.subframe(h)
        proj = lat.mask_projection(frame, fh)
        full_h = fh.full_mask
        sums: dict[int, fz.Row] = {}
        nz = np.flatnonzero(const_mass)
        for b in set(int(x) for x in nz if x) | set(mass_rows):
            g = int(proj[b])
            r = mass_row(b)
            acc = sums.setdefault(g, fz.Row({}, Fraction(0)))
            for i, c in r.coef.items():
                acc.coef[i] = acc.coef.get(i, Fraction(0)) + c
            acc.const += r.const
        total = fz.Row({}, Fraction(0))
        for g, acc in sorted(sums.items()):
            acc = fz.row(acc.coef, acc.const)
            if g != full_h:
                equalities.append(acc)
            for i, c in acc.coef.items():
                total.coef[i] = total.coef.get(i, Fraction(0)) + c
            total.const += acc.const
        inequalities.append(fz.row(total.coef, total.const, strict=True))
    elif constraint is not None:
        raise TypeError(f"unsupported constraint {constraint!r}")
    if proper:
        nz = np.flatnonzero(const_mass)
        for b in sorted(set(int(x) for x in nz if x) | set(mass_rows)):
            inequalities.append(mass_row(b))

    res = fz.solve(equalities, inequalities, cap=cap)
    if res.status is fz.Status.INFEASIBLE:
        return SolveResult("infeasible", reason=res.reason, n_free=len(free))
    if res.status is fz.Status.UNKNOWN:
        return SolveResult("unknown", reason=res.reason, n_free=len(free))
    x = res.solution
    d = lat.common_denominator(list(x.values()))
    full = num * d
    for a, i in var_of.items():
        full[a] = int(x.get(i, Fraction(0)) * scale * d)
    member = _member_from_q(frame, full, scale * d, m.mode)
    return SolveResult("found", member, n_free=len(free))


# -- compression ----------------------------------------------------------------------

def compress(m: MassFunction, p: Iterable[str] | str) -> MassFunction | None:
    """The marginal on the remaining variables if ``m`` is its vacuous
    extension, else ``None`` (not compressible)."""
    p = as_varset(m.frame, p)
    rest = project(m, m.frame.varset - p)
    if vacuous_extend(rest, m.frame) == m:
        return rest
    return None


# -- independence tests -------------------------------------------------------------

def _disjoint(*sets: frozenset):
    seen: set = set()
    for s in sets:
        if seen & s:
            raise FrameError("variable sets must be pairwise disjoint")
        seen |= s


def independent_unconditional(m: MassFunction, p, q) -> IndependenceReport:
    p, q = as_varset(m.frame, p), as_varset(m.frame, q)
    _disjoint(p, q)
    joint = project(m, p | q)
    left, right = project(m, p), project(m, q)
    try:
        combined = combine(left, right).result
    except TotalConflict:
        return IndependenceReport(Method.UNCONDITIONAL, p, q, frozenset(), Verdict.FALSE,
                                  violation="marginals are totally conflicting")
    if combined == joint:
        return IndependenceReport(Method.UNCONDITIONAL, p, q, frozenset(), Verdict.TRUE,
                                  witness=FactorizationWitness(left, right, Fraction(1)))
    return IndependenceReport(Method.UNCONDITIONAL, p, q, frozenset(), Verdict.FALSE,
                              violation="joint marginal differs from the combination of the marginals")


def _restrict(m: MassFunction, q, r, p):
    q, r, p = (as_varset(m.frame, s) for s in (q, r, p))
    _disjoint(q, r, p)
    scope = p | q | r
    sub = m if scope == m.frame.varset else project(m, scope)
    return sub, q, r, p


@dataclass
class _OracleOutcome:
    factorizable: bool
    violation: str | None = None
    data: dict = field(default_factory=dict)


def _oracle_core(m: MassFunction, q: frozenset, r: frozenset, p: frozenset) -> _OracleOutcome:
    frame = m.frame
    lat.check_gate(frame)
    fpq, fpr, fp = frame.subframe(p | q), frame.subframe(p | r), frame.subframe(p)
    qa, _ = m.dense_q()
    if np.any(qa[1:] < 0):
        a = int(np.flatnonzero(qa[1:] < 0)[0]) + 1
        return _OracleOutcome(False, f"negative commonality at {_fmt(frame, a)}")
    kb = lat.mask_projection(frame, fpq)
    kc = lat.mask_projection(frame, fpr)
    kp = lat.mask_projection(frame, fp)
    cyl_b = lat.cylinder_array(frame, fpq)
    cyl_c = lat.cylinder_array(frame, fpr)
    sets = np.arange(1, qa.shape[0], dtype=np.int64)
    b_of, c_of = kb[sets], kc[sets]
    rep = cyl_b[b_of] & cyl_c[c_of]
    qs = qa[sets]
    bad = np.flatnonzero(qs != qa[rep])
    if bad.size:
        a = int(sets[bad[0]])
        return _OracleOutcome(
            False, f"fiber: Q{_fmt(frame, a)} differs from Q{_fmt(frame, int(rep[bad[0]]))} with the same projections"
        )
    nz = sets[qs != 0]
    if nz.size == 0:
        return _OracleOutcome(False, "commonality vanishes everywhere")
    blocks, first = np.unique(kp[nz], return_index=True)
    piv = nz[first]
    g_of = kp[sets]
    where = np.searchsorted(blocks, g_of)
    where = np.minimum(where, blocks.size - 1)
    live = blocks[where] == g_of
    s_live = sets[live]
    pv = piv[where[live]]
    b0, c0 = kb[pv], kc[pv]
    m_bc0 = qa[cyl_b[kb[s_live]] & cyl_c[c0]]
    m_b0c = qa[cyl_b[b0] & cyl_c[kc[s_live]]]
    q_live = qa[s_live]
    zero_ok = (q_live != 0) == ((m_bc0 != 0) & (m_b0c != 0))
    bad = np.flatnonzero(~zero_ok)
    if bad.size:
        a = int(s_live[bad[0]])
        return _OracleOutcome(False, f"zero pattern: support is not a union of full rows and columns at {_fmt(frame, a)}")
    cross = lat.exact_product(q_live, qa[pv]) == lat.exact_product(m_bc0, m_b0c)
    bad = np.flatnonzero(~cross)
    if bad.size:
        a = int(s_live[bad[0]])
        return _OracleOutcome(False, f"cross ratio fails at {_fmt(frame, a)}")
    return _OracleOutcome(True, data=dict(blocks=blocks, piv=piv, fpq=fpq, fpr=fpr, fp=fp))


def _witness(m: MassFunction, data: dict) -> FactorizationWitness:
    frame = m.frame
    fpq, fpr, fp = data["fpq"], data["fpr"], data["fp"]
    blocks, piv = data["blocks"], data["piv"]
    qa, d = m.dense_q()
    kb = lat.mask_projection(frame, fpq)
    kc = lat.mask_projection(frame, fpr)
    cyl_b = lat.cylinder_array(frame, fpq)
    cyl_c = lat.cylinder_array(frame, fpr)
    pivot_of = {int(g): int(a) for g, a in zip(blocks, piv)}

    proj_b = lat.mask_projection(fpq, fp)
    f = np.zeros(1 << fpq.size, dtype=object)
    f[:] = 0
    for b in range(1, 1 << fpq.size):
        a = pivot_of.get(int(proj_b[b]))
        if a is not None:
            f[b] = int(qa[int(cyl_b[b]) & int(cyl_c[kc[a]])])
    proj_c = lat.mask_projection(fpr, fp)
    scale = math.lcm(1, *(int(qa[a]) for a in pivot_of.values()))
    g = np.zeros(1 << fpr.size, dtype=object)
    g[:] = 0
    for c in range(1, 1 << fpr.size):
        a = pivot_of.get(int(proj_c[c]))
        if a is not None:
            g[c] = int(qa[int(cyl_b[kb[a]]) & int(cyl_c[c])]) * (scale // int(qa[a]))
    left = _member_from_q(fpq, f, 1, m.mode)
    right = _member_from_q(fpr, g, 1, m.mode)
    a0 = int(piv[0])
    target = normalize(m, m.mode)
    k = target.q(a0) / (left.q(int(kb[a0])) * right.q(int(kc[a0])))
    return FactorizationWitness(left, right, k)


def factorization_oracle(m: MassFunction, q, r, p, *, witness: bool = True) -> IndependenceReport:
    """Decide whether the marginal on ``p | q | r`` is a combination of
    pseudo-belief factors on ``p | q`` and ``p | r`` (Shenoy independence)."""
    sub, q, r, p = _restrict(m, q, r, p)
    out = _oracle_core(sub, q, r, p)
    if not out.factorizable:
        return IndependenceReport(Method.SHENOY, q, r, p, Verdict.FALSE, violation=out.violation)
    wit = _witness(sub, out.data) if witness else None
    return IndependenceReport(Method.SHENOY, q, r, p, Verdict.TRUE, witness=wit)


def shenoy_independent(m: MassFunction, q, r, p, *, witness: bool = True) -> IndependenceReport:
    return factorization_oracle(m, q, r, p, witness=witness)


def intrinsic_independent(m: MassFunction, q, r, p, *, witness: bool = True, cross_check: bool = True) -> IndependenceReport:
    """Diversity of the marginal on ``p | q | r`` plus a factorization across ``p``.

    The factorization is decided by the commonality oracle and cross-checked
    against the anticonditional solver (a conditional given ``p | q`` that is
    compressibly independent of ``q``).
    """
    sub, q, r, p = _restrict(m, q, r, p)
    diverse = is_diverse(sub)
    oracle = _oracle_core(sub, q, r, p)
    fact = Verdict.of(oracle.factorizable)
    if cross_check and all(v >= 0 for v in sub.masses.values()):
        solved = anticonditional_solve(sub, p | q, CompressiblyIndependentOf(q))
        if solved.status != "unknown" and solved.found != oracle.factorizable:
            raise InconsistentOracles(
                f"oracle says {oracle.factorizable}, solver says {solved.status} for {sorted(q)} _|_ {sorted(r)} | {sorted(p)}"
            )
    verdict = Verdict.of(diverse and oracle.factorizable)
    violation = oracle.violation
    if not diverse:
        zero = [i for i, v in enumerate(sub.singleton_q()) if v == 0]
        violation = f"not diverse: Q of singleton {sub.frame.decode(zero[0])} is zero"
    wit = _witness(sub, oracle.data) if (witness and oracle.factorizable) else None
    return IndependenceReport(Method.INTRINSIC, q, r, p, verdict, witness=wit, violation=violation,
                              diversity=diverse, factorizable=fact)


def cano_conditional_exists(m: MassFunction, h) -> IndependenceReport:
    """Is ``m = m^h (+) beta`` for a proper ``beta`` whose marginal on ``h`` is vacuous?"""
    h = as_varset(m.frame, h)
    res = anticonditional_solve(m, h, CanoVacuousOn(h), proper=True)
    rest = m.frame.varset - h
    if res.status == "found":
        wit = FactorizationWitness(project(m, h), res.member, Fraction(1))
        return IndependenceReport(Method.CANO, rest, frozenset(), h, Verdict.TRUE, witness=wit)
    verdict = Verdict.UNKNOWN if res.status == "unknown" else Verdict.FALSE
    return IndependenceReport(Method.CANO, rest, frozenset(), h, verdict, violation=res.reason)
