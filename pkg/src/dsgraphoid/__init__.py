"""Exact Dempster-Shafer belief functions with anticonditionals and
intrinsic (diversity-gated) conditional independence."""

from .frame import EventSet, Frame, Variable, build_frame, extend_set, project_set
from .massfun import (
    CommonalityTable,
    MassFunction,
    NormMode,
    classify,
    commonality,
    mass_from_commonality,
    normalize,
    query,
)
from .calculus import combine, condition_shafer, project, remove_shenoy, vacuous_extend
from .bpa import emit_bpa, load_bpa, parse_bpa
from .independence import (
    CanoVacuousOn,
    CompressiblyIndependentOf,
    Verdict,
    anticonditional_canonical,
    anticonditional_solve,
    anticonditional_verify,
    cano_conditional_exists,
    compress,
    factorization_oracle,
    independent_unconditional,
    intrinsic_independent,
)
from .graphoid import Axiom, AxiomQuery, GeneratorSpec, Relation, Status, check_axiom, gen_random, sweep
from . import config

__all__ = [
    "Axiom", "AxiomQuery", "CanoVacuousOn", "CompressiblyIndependentOf", "GeneratorSpec", "Relation",
    "Status", "Verdict", "anticonditional_canonical", "anticonditional_solve", "anticonditional_verify",
    "cano_conditional_exists", "check_axiom", "compress", "config", "factorization_oracle", "gen_random",
    "independent_unconditional", "intrinsic_independent", "sweep",
    "CommonalityTable", "EventSet", "Frame", "MassFunction", "NormMode", "Variable",
    "build_frame", "classify", "combine", "commonality", "condition_shafer", "emit_bpa",
    "extend_set", "load_bpa", "mass_from_commonality", "normalize", "parse_bpa",
    "project", "project_set", "query", "remove_shenoy", "vacuous_extend",
]
