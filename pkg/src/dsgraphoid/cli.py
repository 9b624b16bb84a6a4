"""The ``ds`` command-line front end.

Boolean queries exit 0 for True, 3 for False and 4 for Unknown.  Usage
errors exit 64 and domain errors 65 and up (66 for an exceeded lattice gate).
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import config
from .bpa import ParseError, emit_bpa, format_frame, format_rational, format_set, parse_bpa, parse_document, parse_set
from .calculus import combine, condition_shafer, project, removal_constant, remove_shenoy, vacuous_extend
from .errors import (
    DSError,
    FrameError,
    InconsistentOracles,
    InvalidMass,
    LatticeTooLarge,
    NoAnticonditional,
    NoCanonicalMember,
    NotNormalizable,
    NotPseudoBelief,
    RemovalUndefined,
    TotalConflict,
)
from .examples import FIXTURES, fixture_path, run_examples
from .frame import as_varset, union_frame
from .graphoid import Axiom, GeneratorSpec, Relation, Status, gen_random, sweep, universe_focal_experiment
from .independence import (
    CanoVacuousOn,
    CompressiblyIndependentOf,
    IndependenceReport,
    Verdict,
    anticonditional_canonical,
    anticonditional_solve,
    anticonditional_verify,
    cano_conditional_exists,
    factorization_oracle,
    independent_unconditional,
    intrinsic_independent,
)
from .massfun import MassFunction, NormMode, classify, commonality, mass_from_commonality, normalize

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN = 0, 3, 4
EXIT_USAGE = 64

# Most specific classes first.
_DOMAIN_CODES = (
    (ParseError, 65),
    (LatticeTooLarge, 66),
    (TotalConflict, 67),
    (NotNormalizable, 68),
    (NotPseudoBelief, 69),
    (InvalidMass, 69),
    (RemovalUndefined, 70),
    (NoAnticonditional, 71),
    (NoCanonicalMember, 71),
    (FrameError, 72),
    (InconsistentOracles, 73),
    (DSError, 65),
)
EXIT_IO = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Output:
    """Collects records and prints them as ``key=value`` lines or a table."""

    def __init__(self, fmt: str, stream):
        self.fmt, self.stream, self.rows = fmt, stream, []

    def add(self, key: str, value):
        self.rows.append((key, value if isinstance(value, str) else _text(value)))

    def flush(self):
        if self.fmt == "kv":
            for key, value in self.rows:
                self.stream.write(f"{key}={value}\n")
        else:
            width = max((len(k) for k, _ in self.rows), default=0)
            for key, value in self.rows:
                self.stream.write(f"{key.ljust(width)}  {value}\n")
        self.rows = []


def _text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (set, frozenset)):
        return ",".join(sorted(value)) if value else "-"
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _load(spec: str) -> MassFunction:
    """Read a function from a path, ``-`` (stdin) or ``fixture:NAME``."""
    if spec == "-":
        return parse_bpa(sys.stdin.read())
    if spec.startswith("fixture:"):
        return parse_bpa(fixture_path(spec[len("fixture:"):]).read_text(encoding="utf-8"))
    return parse_bpa(Path(spec).read_text(encoding="utf-8"))


def _vars(m: MassFunction, text: str | None) -> frozenset:
    if text is None or text.strip() in ("", "-"):
        return frozenset()
    return as_varset(m.frame, [t for t in text.replace(",", " ").split() if t])


def _emit_function(out: Output, m: MassFunction, prefix: str = ""):
    out.add(prefix + "frame", format_frame(m.frame)[len("frame "):] if m.frame.variables else "")
    out.add(prefix + "mode", m.mode.value)
    for mask, value in sorted(m.masses.items()):
        out.add(prefix + "focal", f"{format_set(m.frame, mask)} : {format_rational(value)}")


def _emit_report(out: Output, rep: IndependenceReport, witness: bool = True):
    out.add("method", rep.method)
    out.add("q", rep.q)
    out.add("r", rep.r)
    out.add("p", rep.p)
    out.add("verdict", rep.verdict)
    if rep.diversity is not None:
        out.add("diversity", rep.diversity)
    if rep.factorizable is not None:
        out.add("factorizable", rep.factorizable)
    if rep.violation:
        out.add("violation", rep.violation)
    if witness and rep.witness is not None:
        out.add("witness.scale", rep.witness.scale)
        _emit_function(out, rep.witness.left, "witness.left.")
        _emit_function(out, rep.witness.right, "witness.right.")


def _verdict_code(v: Verdict) -> int:
    return {Verdict.TRUE: EXIT_TRUE, Verdict.FALSE: EXIT_FALSE, Verdict.UNKNOWN: EXIT_UNKNOWN}[v]


# -- commands -----------------------------------------------------------------------

def cmd_show(args, out: Output) -> int:
    m = _load(args.file)
    _emit_function(out, m)
    for key, value in classify(m).flags().items():
        out.add(f"class.{key}", value)
    return 0


def cmd_combine(args, out: Output) -> int:
    functions = [_load(f) for f in args.files]
    if len(functions) == 1:
        _emit_function(out, functions[0])
        out.add("conflict", Fraction(0))
        return 0
    acc = functions[0]
    conflicts = []
    for m in functions[1:]:
        res = combine(acc, m)
        acc = res.result
        conflicts.append(res.conflict)
    _emit_function(out, acc)
    for c in conflicts:
        out.add("conflict", c)
    return 0


def cmd_project(args, out: Output) -> int:
    m = _load(args.file)
    _emit_function(out, project(m, _vars(m, args.onto)))
    return 0


def cmd_extend(args, out: Output) -> int:
    m = _load(args.file)
    decl = args.onto.strip()
    if not decl.startswith("frame"):
        decl = "frame " + decl
    target = parse_document(decl).frame
    _emit_function(out, vacuous_extend(m, union_frame(m.frame, target)))
    return 0


def cmd_condition(args, out: Output) -> int:
    m = _load(args.file)
    res = condition_shafer(m, parse_set(m.frame, args.evidence))
    result = res.result if args.onto is None else project(res.result, _vars(m, args.onto))
    _emit_function(out, result)
    out.add("conflict", res.conflict)
    return 0


def cmd_remove(args, out: Output) -> int:
    sigma_m, rho_m = _load(args.sigma), _load(args.rho)
    if rho_m.frame.varset != sigma_m.frame.varset:
        rho_m = vacuous_extend(rho_m, sigma_m.frame)
    rho_m = rho_m.with_frame(sigma_m.frame)
    sigma, rho = commonality(sigma_m), commonality(rho_m)
    k = removal_constant(sigma, rho)
    table = remove_shenoy(sigma, rho)
    result = normalize(mass_from_commonality(table, NormMode.SIGNED), NormMode.SIGNED)
    _emit_function(out, result)
    out.add("K", k)
    out.add("proper", all(v >= 0 for v in result.masses.values()))
    return 0


def cmd_anticond(args, out: Output) -> int:
    m = _load(args.file)
    given = _vars(m, args.given)
    if args.verify:
        res = anticonditional_verify(m, given, _load(args.verify))
        out.add("valid", res.valid)
        if res.conflict is not None:
            out.add("conflict", res.conflict)
        for event, want, got in res.mass_mismatches:
            out.add("mass_residual", f"{format_set(m.frame, event.mask)} : expected {format_rational(want)} got {format_rational(got)}")
        for event, want, got in res.q_mismatches:
            out.add("q_residual", f"{format_set(m.frame, event.mask)} : expected {format_rational(want)} got {format_rational(got)}")
        return EXIT_TRUE if res.valid else EXIT_FALSE
    if args.solve is None:
        _emit_function(out, anticonditional_canonical(m, given))
        return 0
    if args.solve == "cano":
        res = anticonditional_solve(m, given, CanoVacuousOn(given), proper=True)
    elif args.solve.startswith("compress:"):
        res = anticonditional_solve(m, given, CompressiblyIndependentOf(_vars(m, args.solve[len("compress:"):])))
    else:
        raise UsageError("--solve takes compress:<vars> or cano")
    out.add("status", res.status)
    if res.reason:
        out.add("reason", res.reason)
    if res.member is not None:
        _emit_function(out, res.member)
    return {"found": EXIT_TRUE, "infeasible": EXIT_FALSE}.get(res.status, EXIT_UNKNOWN)


def cmd_indep(args, out: Output) -> int:
    m = _load(args.file)
    p, q, r = _vars(m, args.p), _vars(m, args.q), _vars(m, args.r)
    kind = args.type
    if kind == "unconditional":
        left, right = (q, r) if r else (p, q)
        if not left or not right or (r and p):
            raise UsageError("unconditional independence takes two sets: -q and -r (or -p and -q)")
        rep = independent_unconditional(m, left, right)
    elif kind == "cano":
        rep = cano_conditional_exists(m, p)
    else:
        if not q or not r:
            raise UsageError(f"{kind} independence needs -q and -r")
        fn = factorization_oracle if kind == "shenoy" else intrinsic_independent
        rep = fn(m, q, r, p)
    _emit_report(out, rep, witness=not args.no_witness)
    return _verdict_code(rep.verdict)


def cmd_graphoid(args, out: Output) -> int:
    m = _load(args.file)
    axioms = [Axiom(a.strip().replace("-", "_")) for a in args.axioms.split(",")] if args.axioms else list(Axiom)
    relation = Relation(args.relation)
    verdicts = sweep(m, axioms, relation)
    counts = Counter()
    for v in verdicts:
        counts[v.status] += 1
        if args.all or v.status in (Status.VIOLATED, Status.UNKNOWN):
            out.add("instance", f"{v.query.describe()} {v.status.value}")
    out.add("relation", relation)
    out.add("instances", len(verdicts))
    for status in Status:
        out.add(f"count.{status.value}", counts[status])
    if counts[Status.VIOLATED]:
        return EXIT_FALSE
    return EXIT_UNKNOWN if counts[Status.UNKNOWN] else EXIT_TRUE


def _parse_vars_spec(text: str):
    items = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" in part:
            name, size = part.split("=", 1)
            items.append((name.strip(), int(size)))
        else:
            items.append(int(part))
    if not items:
        raise UsageError("--vars needs at least one variable")
    return tuple(items)


def cmd_gen(args, out: Output) -> int:
    try:
        variables = _parse_vars_spec(args.vars)
    except ValueError:
        raise UsageError("--vars takes sizes like 2,2,3 or named sizes like X=2,Y=3") from None
    blocks = None
    if args.factorized:
        blocks = tuple(tuple(n.strip() for n in blk.split(",") if n.strip()) for blk in args.factorized.split(";"))
    spec = GeneratorSpec(variables, args.focals, args.diverse, args.probabilistic, True, blocks, args.seed)
    out.stream.write(emit_bpa(gen_random(spec)))
    return 0


def cmd_universe(args, out: Output) -> int:
    try:
        eps = Fraction(args.eps)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --eps {args.eps!r}") from None
    rep = universe_focal_experiment(args.size, eps)
    out.add("size", args.size)
    out.add("eps", eps)
    _emit_report(out, rep, witness=False)
    return _verdict_code(rep.verdict)


def cmd_examples(args, out: Output) -> int:
    if args.list:
        for name in FIXTURES:
            out.add("fixture", name)
        return 0
    checks = run_examples(args.run)
    for c in checks:
        line = f"{c.example}: {c.claim}" + (f" [{c.detail}]" if c.detail else "")
        out.add("pass" if c.passed else "FAIL", line)
    failed = sum(not c.passed for c in checks)
    out.add("checks", len(checks))
    out.add("failed", failed)
    return EXIT_FALSE if failed else EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ds", description="Exact Dempster-Shafer belief-function calculus.")
    ap.add_argument("--format", choices=("kv", "table"), default="kv")
    ap.add_argument("--lattice-gate", type=int, default=None, metavar="N")
    ap.add_argument("--solver-cap", type=int, default=None, metavar="N")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("show", help="print a function and its classification")
    s.add_argument("file")
    s.set_defaults(fn=cmd_show)

    s = sub.add_parser("combine", help="Dempster combination")
    s.add_argument("files", nargs="+")
    s.set_defaults(fn=cmd_combine)

    s = sub.add_parser("project", help="marginal on a variable set")
    s.add_argument("file")
    s.add_argument("--onto", required=True, help="comma-separated variables (empty for the unit frame)")
    s.set_defaults(fn=cmd_project)

    s = sub.add_parser("extend", help="vacuous extension")
    s.add_argument("file")
    s.add_argument("--onto", required=True, help='frame declaration such as "Z = z1 z2"')
    s.set_defaults(fn=cmd_extend)

    s = sub.add_parser("condition", help="Shafer conditioning on evidence")
    s.add_argument("file")
    s.add_argument("--evidence", required=True, help='set expression such as "{ (x1 y1) }" or X=x1')
    s.add_argument("--onto", default=None, help="project the result on these variables")
    s.set_defaults(fn=cmd_condition)

    s = sub.add_parser("remove", help="removal of rho's commonality from sigma's")
    s.add_argument("sigma")
    s.add_argument("rho")
    s.set_defaults(fn=cmd_remove)

    s = sub.add_parser("anticond", help="anticonditional given a variable set")
    s.add_argument("file")
    s.add_argument("--given", required=True)
    s.add_argument("--solve", default=None, help="compress:<vars> or cano")
    s.add_argument("--verify", default=None, metavar="CANDIDATE", help="check a candidate instead")
    s.set_defaults(fn=cmd_anticond)

    s = sub.add_parser("indep", help="independence query")
    s.add_argument("file")
    s.add_argument("--type", choices=("unconditional", "shenoy", "intrinsic", "cano"), default="intrinsic")
    s.add_argument("-p", default=None)
    s.add_argument("-q", default=None)
    s.add_argument("-r", default=None)
    s.add_argument("--no-witness", action="store_true")
    s.set_defaults(fn=cmd_indep)

    s = sub.add_parser("graphoid", help="sweep graphoid axioms over all variable tuples")
    s.add_argument("file")
    s.add_argument("--axioms", default=None, help="comma-separated subset of " + ",".join(a.value for a in Axiom))
    s.add_argument("--relation", choices=[r.value for r in Relation], default="intrinsic")
    s.add_argument("--all", action="store_true", help="list every instance, not only violations")
    s.set_defaults(fn=cmd_graphoid)

    s = sub.add_parser("gen", help="seeded random belief function")
    s.add_argument("--vars", required=True, help="domain sizes, e.g. 2,2,2 or X=2,Y=3")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--focals", type=int, default=4)
    s.add_argument("--diverse", action="store_true")
    s.add_argument("--probabilistic", action="store_true")
    s.add_argument("--factorized", default=None, help='blocks such as "X1,X2;X2,X3"')
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("universe-focal", help="independence after adding a universe focal")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--eps", required=True)
    s.set_defaults(fn=cmd_universe)

    s = sub.add_parser("examples", help="replay the bundled fixture checks")
    s.add_argument("--run", default="all")
    s.add_argument("--list", action="store_true")
    s.set_defaults(fn=cmd_examples)
    return ap


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    changes = {}
    if args.lattice_gate is not None:
        changes["lattice_gate"] = args.lattice_gate
    if args.solver_cap is not None:
        changes["solver_cap"] = args.solver_cap
    out = Output(args.format, stdout)
    try:
        with config.override(**changes):
            code = args.fn(args, out)
    except UsageError as exc:
        stderr.write(f"ds: {exc}\n")
        return EXIT_USAGE
    except KeyError as exc:
        stderr.write(f"ds: {exc.args[0] if exc.args else exc}\n")
        return EXIT_USAGE
    except DSError as exc:
        stderr.write(f"ds: {type(exc).__name__}: {exc}\n")
        return next(code for cls, code in _DOMAIN_CODES if isinstance(exc, cls))
    except OSError as exc:
        stderr.write(f"ds: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        stderr.write(f"ds: {exc}\n")
        return EXIT_USAGE
    out.flush()
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
