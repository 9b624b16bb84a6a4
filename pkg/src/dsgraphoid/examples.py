"""Regression checks over the bundled fixtures, shared by ``ds examples`` and the tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib.resources import files
from typing import Callable

from .bpa import emit_bpa, load_bpa, parse_set
from .calculus import combine, condition_shafer, project, vacuous_extend
from .frame import EventSet
from .independence import (
    CanoVacuousOn,
    CompressiblyIndependentOf,
    Verdict,
    anticonditional_solve,
    anticonditional_verify,
    cano_conditional_exists,
    compress,
    factorization_oracle,
    independent_unconditional,
    intrinsic_independent,
)
from .massfun import MassFunction, classify, query

FIXTURES = (
    "ex-cano-1", "ex-cano-2", "ex-square", "ex-diag", "ex-diag-yz", "ex-diag-xy", "ex-diag-z",
    "ex-diag-cond", "ex-diag-compressed", "ex-twocond", "ex-twocond-cand-1", "ex-twocond-cand-2",
    "ex-xor", "ex-chain",
)


def fixture_path(name: str):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return files("dsgraphoid") / "fixtures" / f"{name}.bpa"


def fixture(name: str) -> MassFunction:
    return load_bpa(fixture_path(name))


def fixture_text(name: str) -> str:
    """The fixture file without comment lines."""
    lines = fixture_path(name).read_text(encoding="utf-8").splitlines()
    return "".join(line + "\n" for line in lines if line.strip() and not line.lstrip().startswith("#"))


@dataclass(frozen=True)
class Check:
    example: str
    claim: str
    passed: bool
    detail: str = ""


def _cano() -> list[Check]:
    out = combine(fixture("ex-cano-1"), fixture("ex-cano-2"))
    m = out.result
    flags = classify(m)
    universe = m.mass(m.frame.full_mask)
    rep = intrinsic_independent(m, "Y", "Z", "X")
    witness_ok = False
    if rep.witness is not None:
        witness_ok = combine(rep.witness.left, rep.witness.right).result == m
    cano = cano_conditional_exists(m, "X")
    solved = anticonditional_solve(m, "X", CanoVacuousOn(frozenset({"X"})), proper=True)
    return [
        Check("ex-cano", "conflict is 9/25", out.conflict == Fraction(9, 25), str(out.conflict)),
        Check("ex-cano", "universe mass is 1/32", universe == Fraction(1, 32), str(universe)),
        Check("ex-cano", "combination is positive and diverse", flags.positive and flags.diverse),
        Check("ex-cano", "no Cano a-priori conditional given X", cano.verdict is Verdict.FALSE, cano.violation or ""),
        Check("ex-cano", "Cano-vacuous solve is infeasible", solved.status == "infeasible", solved.reason),
        Check("ex-cano", "Y, Z intrinsically independent given X", rep.verdict is Verdict.TRUE),
        Check("ex-cano", "factorization witness recombines exactly", witness_ok),
    ]


def _square() -> list[Check]:
    m = fixture("ex-square")
    expected = {"{ (y1) (y2) }": Fraction(1, 2), "{ (y1) }": Fraction(1, 4), "{ (y2) }": Fraction(1, 4)}
    checks = []
    for value in ("x1", "x2"):
        cond = condition_shafer(m, EventSet.cylinder(m.frame, X=value)).result
        marginal = project(cond, "Y")
        target = MassFunction(marginal.frame, {parse_set(marginal.frame, k).mask: v for k, v in expected.items()})
        checks.append(Check("ex-square", f"Y-marginal after X={value} is {{Y:1/2, y1:1/4, y2:1/4}}", marginal == target))
    rep = independent_unconditional(m, "X", "Y")
    singles = m.singleton_q()
    checks += [
        Check("ex-square", "X, Y not independent", rep.verdict is Verdict.FALSE),
        Check("ex-square", "diverse", classify(m).diverse),
        Check("ex-square", "every singleton commonality is 3/4", all(v == Fraction(3, 4) for v in singles)),
        Check("ex-square", "plausibility of {(x1 y1)} is 3/4",
              query(m, parse_set(m.frame, "{ (x1 y1) }")).pl == Fraction(3, 4)),
    ]
    return checks


def _diag() -> list[Check]:
    m = fixture("ex-diag")
    cond = fixture("ex-diag-cond")
    tables = [
        ("projection on {Y,Z}", emit_bpa(project(m, {"Y", "Z"})), fixture_text("ex-diag-yz")),
        ("projection on {X,Y}", emit_bpa(project(m, {"X", "Y"})), fixture_text("ex-diag-xy")),
        ("projection on {Z}", emit_bpa(project(m, {"Z"})), fixture_text("ex-diag-z")),
        ("nine-configuration extension", emit_bpa(vacuous_extend(fixture("ex-diag-xy"), m.frame)),
         fixture_text("ex-diag-cond")),
    ]
    checks = [Check("ex-diag", f"{name} matches fixture text", got == want) for name, got, want in tables]
    for p in ("X", "Y", "Z"):
        checks.append(Check("ex-diag", f"not compressible over {p}", compress(m, p) is None))
    compressed = compress(cond, "Z")
    checks += [
        Check("ex-diag", "nine-configuration candidate verifies given {Y,Z}",
              anticonditional_verify(m, {"Y", "Z"}, cond).valid),
        Check("ex-diag", "candidate compresses over Z",
              compressed is not None and emit_bpa(compressed) == fixture_text("ex-diag-compressed")),
    ]
    solved = anticonditional_solve(m, {"Y", "Z"}, CompressiblyIndependentOf(frozenset({"Z"})))
    checks.append(Check("ex-diag", "compressible member given {Y,Z} found", solved.found))
    return checks


def twocond_report() -> list[tuple[str, object]]:
    """Verification outcome for both published candidates."""
    m = fixture("ex-twocond")
    out = []
    for name in ("ex-twocond-cand-1", "ex-twocond-cand-2"):
        out.append((name, anticonditional_verify(m, "Y", fixture(name))))
    return out


def _twocond() -> list[Check]:
    first, second = twocond_report(), twocond_report()
    checks = [Check("ex-twocond", "verification is deterministic", first == second)]
    for name, res in first:
        complete = res.valid == (not res.mass_mismatches) and (res.valid or bool(res.q_mismatches))
        verdict = "valid" if res.valid else f"invalid: {len(res.mass_mismatches)} mass and {len(res.q_mismatches)} Q residuals"
        checks.append(Check("ex-twocond", f"{name} verdict recorded with residuals", complete, verdict))
    return checks


def _xor() -> list[Check]:
    m = fixture("ex-xor")
    checks = []
    for a, b, c in (("X", "Y", "Z"), ("X", "Z", "Y"), ("Y", "Z", "X")):
        checks.append(Check("ex-xor", f"{a}, {b} unconditionally independent",
                            independent_unconditional(m, a, b).verdict is Verdict.TRUE))
        checks.append(Check("ex-xor", f"{a}, {b} not Shenoy-independent given {c}",
                            factorization_oracle(m, a, b, c).verdict is Verdict.FALSE))
    return checks


def _chain() -> list[Check]:
    from .graphoid import Axiom, AxiomQuery, Relation, Status, check_axiom

    m = fixture("ex-chain")
    shenoy = check_axiom(m, AxiomQuery(Axiom.INTERSECTION, {"Y"}, {"Z"}, {"X"}, (), Relation.SHENOY))
    intrinsic = check_axiom(m, AxiomQuery(Axiom.INTERSECTION, {"Y"}, {"Z"}, {"X"}, (), Relation.INTRINSIC))
    diversity = [rep.diversity for _, rep in intrinsic.premises]
    return [
        Check("ex-chain", "proper, probabilistic, not diverse",
              (lambda f: f.proper and f.probabilistic and not f.diverse)(classify(m))),
        Check("ex-chain", "X, Y Shenoy-independent given Z", factorization_oracle(m, "X", "Y", "Z").verdict is Verdict.TRUE),
        Check("ex-chain", "Shenoy intersection violated", shenoy.status is Status.VIOLATED),
        Check("ex-chain", "intrinsic intersection fails the diversity gate",
              intrinsic.status is Status.GATE_FAILED and diversity == [False, False]),
    ]


def _universe() -> list[Check]:
    from .graphoid import universe_focal_experiment

    return [
        Check("universe-focal", "size 3, eps 1/10 destroys independence",
              universe_focal_experiment(3, Fraction(1, 10)).verdict is Verdict.FALSE),
        Check("universe-focal", "eps 0 keeps independence", universe_focal_experiment(3, 0).verdict is Verdict.TRUE),
        Check("universe-focal", "eps 1 is vacuous and independent",
              universe_focal_experiment(3, 1).verdict is Verdict.TRUE),
    ]


EXAMPLES: dict[str, Callable[[], list[Check]]] = {
    "ex-cano": _cano,
    "ex-square": _square,
    "ex-diag": _diag,
    "ex-twocond": _twocond,
    "ex-xor": _xor,
    "ex-chain": _chain,
    "universe-focal": _universe,
}


def run_examples(name: str = "all") -> list[Check]:
    if name == "all":
        return [c for fn in EXAMPLES.values() for c in fn()]
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return EXAMPLES[name]()
