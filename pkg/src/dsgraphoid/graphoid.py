"""Graphoid-axiom checks, seeded random generators and the small experiments
built on them (universe focal, removal counterexamples, diversity relaxation)."""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import RemovalUndefined
from .calculus import combine_all, condition_shafer, project, remove_shenoy, vacuous_extend
from .frame import EventSet, Frame, Variable, as_varset, build_frame
from .independence import (
    IndependenceReport,
    Verdict,
    factorization_oracle,
    independent_unconditional,
    intrinsic_independent,
)
from .massfun import CommonalityTable, MassFunction, commonality, mass_from_commonality


class Axiom(enum.Enum):
    SYMMETRY = "symmetry"
    DECOMPOSITION = "decomposition"
    WEAK_UNION = "weak_union"
    CONTRACTION = "contraction"
    INTERSECTION = "intersection"


class Relation(enum.Enum):
    INTRINSIC = "intrinsic"
    SHENOY = "shenoy"
    UNCONDITIONAL = "unconditional"


class Status(enum.Enum):
    HOLDS = "holds"
    PREMISES_FALSE = "premises_false"
    VIOLATED = "violated"
    GATE_FAILED = "gate_failed"
    UNKNOWN = "unknown"


Statement = tuple[frozenset, frozenset, frozenset]  # (a, b, c) reads "a _|_ b given c"


@dataclass(frozen=True)
class AxiomQuery:
    """One axiom instance.  ``q``, ``r`` (and ``s`` except for symmetry) are
    nonempty; ``p`` may be empty.  All four are pairwise disjoint."""

    axiom: Axiom
    q: frozenset
    r: frozenset
    s: frozenset = frozenset()
    p: frozenset = frozenset()
    relation: Relation = Relation.INTRINSIC

    def __post_init__(self):
        for name in ("q", "r", "s", "p"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        sets = (self.q, self.r, self.s, self.p)
        if sum(len(x) for x in sets) != len(frozenset().union(*sets)):
            raise ValueError("axiom sets must be pairwise disjoint")
        if not self.q or not self.r:
            raise ValueError("q and r must be nonempty")
        if self.axiom is not Axiom.SYMMETRY and not self.s:
            raise ValueError(f"{self.axiom.value} needs a nonempty s")

    def statements(self) -> tuple[list[Statement], Statement]:
        q, r, s, p = self.q, self.r, self.s, self.p
        if self.axiom is Axiom.SYMMETRY:
            return [(q, r, p)], (r, q, p)
        if self.axiom is Axiom.DECOMPOSITION:
            return [(q, r | s, p)], (q, r, p)
        if self.axiom is Axiom.WEAK_UNION:
            return [(q, r | s, p)], (q, r, p | s)
        if self.axiom is Axiom.CONTRACTION:
            return [(q, r, p), (q, s, p | r)], (q, r | s, p)
        return [(q, s, p | r), (r, s, p | q)], (q | r, s, p)

    def describe(self) -> str:
        def fmt(x):
            return "{" + ",".join(sorted(x)) + "}"
        return f"{self.axiom.value}(q={fmt(self.q)} r={fmt(self.r)} s={fmt(self.s)} p={fmt(self.p)})"


@dataclass(frozen=True)
class AxiomVerdict:
    query: AxiomQuery
    premises: tuple[tuple[Statement, IndependenceReport], ...]
    conclusion: tuple[Statement, IndependenceReport]
    status: Status


def evaluate(m: MassFunction, statement: Statement, relation: Relation, *, cross_check: bool = True) -> IndependenceReport:
    a, b, c = statement
    if relation is Relation.INTRINSIC:
        return intrinsic_independent(m, a, b, c, witness=False, cross_check=cross_check)
    if relation is Relation.SHENOY:
        return factorization_oracle(m, a, b, c, witness=False)
    if c:
        raise ValueError("unconditional independence takes no conditioning set")
    return independent_unconditional(m, a, b)


def _gate_only(report: IndependenceReport) -> bool:
    return report.diversity is False and report.factorizable is Verdict.TRUE


def check_axiom(m: MassFunction, query: AxiomQuery, *, evaluator: Callable | None = None) -> AxiomVerdict:
    """Evaluate the premises and the conclusion of one axiom instance."""
    if query.relation is Relation.INTRINSIC and any(v < 0 for v in m.masses.values()):
        raise ValueError("intrinsic axiom checks need a proper belief function")
    as_varset(m.frame, query.q | query.r | query.s | query.p)
    run = evaluator or (lambda st: evaluate(m, st, query.relation))
    premise_stmts, concl_stmt = query.statements()
    premises = tuple((st, run(st)) for st in premise_stmts)
    conclusion = (concl_stmt, run(concl_stmt))
    false = [rep for _, rep in premises if rep.verdict is Verdict.FALSE]
    if false:
        status = Status.GATE_FAILED if all(_gate_only(rep) for rep in false) else Status.PREMISES_FALSE
    elif any(rep.verdict is Verdict.UNKNOWN for _, rep in premises):
        status = Status.UNKNOWN
    else:
        status = {
            Verdict.TRUE: Status.HOLDS,
            Verdict.FALSE: Status.VIOLATED,
            Verdict.UNKNOWN: Status.UNKNOWN,
        }[conclusion[1].verdict]
    return AxiomVerdict(query, premises, conclusion, status)


def _subsets(items: Sequence[str]):
    for k in range(len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


def axiom_tuples(frame: Frame, axiom: Axiom) -> list[tuple[frozenset, frozenset, frozenset, frozenset]]:
    """Every (q, r, s, p) valid for the axiom, in a fixed order.

    Each variable goes to one of q, r, s, p or stays unused; symmetry has no s.
    """
    names = frame.names
    roles = 4 if axiom is Axiom.SYMMETRY else 5
    out = []
    for assignment in itertools.product(range(roles), repeat=len(names)):
        groups = [frozenset(n for n, g in zip(names, assignment) if g == k) for k in range(5)]
        if axiom is Axiom.SYMMETRY:
            q, r, p, _, _ = groups
            s = frozenset()
            if q and r:
                out.append((q, r, s, p))
        else:
            q, r, s, p, _ = groups
            if q and r and s:
                out.append((q, r, s, p))
    return out


def sweep(
    m: MassFunction,
    axioms: Iterable[Axiom] = tuple(Axiom),
    relation: Relation = Relation.INTRINSIC,
    *,
    cross_check: bool = True,
) -> list[AxiomVerdict]:
    """All axiom instances over the frame's variables, with queries memoized.

    Instances that need a conditioning set are skipped for the unconditional
    relation.
    """
    memo: dict[Statement, IndependenceReport] = {}

    def run(st: Statement) -> IndependenceReport:
        rep = memo.get(st)
        if rep is None:
            rep = memo[st] = evaluate(m, st, relation, cross_check=cross_check)
        return rep

    out = []
    for axiom in axioms:
        for q, r, s, p in axiom_tuples(m.frame, axiom):
            query = AxiomQuery(axiom, q, r, s, p, relation)
            if relation is Relation.UNCONDITIONAL:
                premises, concl = query.statements()
                if any(c for _, _, c in premises + [concl]):
                    continue
            out.append(check_axiom(m, query, evaluator=run))
    return out


# -- random generation ---------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for :func:`gen_random`.

    ``variables`` holds domain sizes (names default to ``X1..Xn``) or
    ``(name, size)`` pairs.  ``factorized`` lists blocks of variable names;
    the function is then a combination of independently drawn factors, one
    per block (blocks may overlap).
    """

    variables: tuple
    focal_count: int = 4
    diverse: bool = False
    probabilistic: bool = False
    proper: bool = True
    factorized: tuple[tuple[str, ...], ...] | None = None
    seed: int = 0

    def frame(self) -> Frame:
        vars_ = []
        for i, item in enumerate(self.variables, start=1):
            name, size = (f"X{i}", item) if isinstance(item, int) else item
            vars_.append(Variable(name, tuple(f"{name.lower()}{j}" for j in range(1, size + 1))))
        return build_frame(vars_)


def _random_mask(rng: np.random.Generator, n: int) -> int:
    while True:
        mask = 0
        for b in np.flatnonzero(rng.integers(0, 2, size=n)):
            mask |= 1 << int(b)
        if mask:
            return mask


def _draw(frame: Frame, spec: GeneratorSpec, rng: np.random.Generator) -> MassFunction:
    n = frame.size
    full = frame.full_mask
    if spec.probabilistic:
        if spec.diverse:
            cells = list(range(n))
        else:
            k = min(max(1, spec.focal_count), n)
            cells = sorted(int(x) for x in rng.choice(n, size=k, replace=False))
        weights = rng.integers(1, 10, size=len(cells))
        total = int(weights.sum())
        return MassFunction(frame, {1 << c: Fraction(int(w), total) for c, w in zip(cells, weights)})
    focal: set[int] = set()
    target = max(1, spec.focal_count)
    attempts = 0
    while len(focal) < target and attempts < 50 * target:
        focal.add(_random_mask(rng, n))
        attempts += 1
    if spec.diverse:
        focal.discard(full)
        universe = Fraction(int(rng.integers(1, 10)), 10)
    else:
        universe = Fraction(0)
    focal = sorted(focal)
    if not focal:
        return MassFunction(frame, {full: Fraction(1)})
    weights = rng.integers(1, 10, size=len(focal))
    total = int(weights.sum())
    masses = {k: (1 - universe) * Fraction(int(w), total) for k, w in zip(focal, weights)}
    if universe:
        masses[full] = masses.get(full, Fraction(0)) + universe
    return MassFunction(frame, masses)


def gen_random(spec: GeneratorSpec) -> MassFunction:
    """Deterministic random belief function for a spec and seed.

    Diverse functions carry a universe focal of mass at least 1/10
    (probabilistic ones put mass on every singleton instead).
    """
    if not spec.proper:
        raise ValueError("only proper belief functions are generated")
    frame = spec.frame()
    seq = np.random.SeedSequence(spec.seed)
    if spec.factorized is None:
        return _draw(frame, spec, np.random.Generator(np.random.PCG64(seq)))
    blocks = [as_varset(frame, b) for b in spec.factorized]
    if not blocks or any(not b for b in blocks):
        raise ValueError("factorization blocks must be nonempty")
    factors = []
    for block, child in zip(blocks, seq.spawn(len(blocks))):
        sub = frame.subframe(block)
        factors.append(_draw(sub, spec, np.random.Generator(np.random.PCG64(child))))
    joint = combine_all(factors)
    if joint.frame.varset != frame.varset:
        return vacuous_extend(joint, frame)
    return joint.with_frame(frame)


# -- experiments ------------------------------------------------------------------------------

def universe_focal_experiment(domain_size: int, epsilon) -> IndependenceReport:
    """Two independent uniform variables with the singleton masses scaled by
    ``1 - epsilon`` and ``epsilon`` moved to the universe; the Shenoy verdict
    for the two variables (no conditioning)."""
    epsilon = Fraction(epsilon)
    if domain_size < 1:
        raise ValueError("domain size must be positive")
    if not 0 <= epsilon <= 1:
        raise ValueError("epsilon must lie in [0, 1]")
    frame = build_frame([
        Variable("X", tuple(f"x{i}" for i in range(1, domain_size + 1))),
        Variable("Y", tuple(f"y{i}" for i in range(1, domain_size + 1))),
    ])
    masses = {}
    if epsilon < 1:
        cell = (1 - epsilon) / (domain_size * domain_size)
        masses = {1 << i: cell for i in range(frame.size)}
    if epsilon:
        masses[frame.full_mask] = masses.get(frame.full_mask, Fraction(0)) + epsilon
    return factorization_oracle(MassFunction(frame, masses), "X", "Y", ())


def marginal_table(m: MassFunction, w) -> CommonalityTable:
    """Commonality of the marginal on ``w``, extended back to ``m``'s frame."""
    return commonality(vacuous_extend(project(m, w), m.frame))


@dataclass(frozen=True)
class RemovalCounterexample:
    seed: int
    sigma: MassFunction
    onto: frozenset
    masses: dict = field(repr=False)
    negative: tuple

    def __repr__(self):
        return f"RemovalCounterexample(seed={self.seed}, onto={sorted(self.onto)}, negative={self.negative!r})"


def removal_counterexample_search(
    variables=(2, 2), seeds: Iterable[int] = range(200), focal_count: int = 4
) -> RemovalCounterexample | None:
    """First seed whose ``sigma (-) sigma_r`` has a negative Mobius mass.

    ``sigma`` is a positive random function and ``sigma_r`` the commonality
    of its marginal on one variable set ``r``, read on the full frame.
    """
    for seed in seeds:
        m = gen_random(GeneratorSpec(tuple(variables), focal_count, diverse=True, seed=seed))
        sigma = commonality(m)
        for w in _subsets(m.frame.names):
            if not w or w == m.frame.varset:
                continue
            rho = marginal_table(m, w)
            try:
                table = remove_shenoy(sigma, rho)
            except RemovalUndefined:
                continue
            masses = mass_from_commonality(table).masses
            neg = tuple((k, v) for k, v in masses.items() if v < 0)
            if neg:
                return RemovalCounterexample(seed, m, w, masses, neg)
    return None


def diversity_relaxation_experiment(
    variables=(2, 2, 2),
    zeros: int = 1,
    seeds: Iterable[int] = range(20),
    relation: Relation = Relation.SHENOY,
    axioms: Iterable[Axiom] = tuple(Axiom),
) -> Counter:
    """Axiom statuses over functions whose singleton commonality vanishes at
    ``zeros`` configurations.

    Each function is a diverse random draw conditioned on the complement of
    ``zeros`` configurations picked by the seed.  Only counts are returned;
    the experiment makes no claim about what they should be.
    """
    axioms = tuple(axioms)
    counts: Counter = Counter()
    for seed in seeds:
        m = gen_random(GeneratorSpec(tuple(variables), diverse=True, seed=seed))
        n = m.frame.size
        if not 0 <= zeros < n:
            raise ValueError(f"zeros must lie in [0, {n - 1}]")
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, zeros])))
        removed = sum(1 << int(i) for i in rng.choice(n, size=zeros, replace=False))
        relaxed = condition_shafer(m, EventSet(m.frame, m.frame.full_mask & ~removed)).result
        counts.update(v.status for v in sweep(relaxed, axioms, relation))
    return counts
