from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import domains, to_sets
from dsgraphoid.calculus import remove_shenoy
from dsgraphoid.frame import build_frame
from dsgraphoid.graphoid import (
    Axiom,
    AxiomQuery,
    GeneratorSpec,
    Relation,
    Status,
    axiom_tuples,
    check_axiom,
    diversity_relaxation_experiment,
    gen_random,
    marginal_table,
    removal_counterexample_search,
    sweep,
    universe_focal_experiment,
)
from dsgraphoid.independence import Verdict, factorization_oracle, independent_unconditional, intrinsic_independent
from dsgraphoid.massfun import MassFunction, classify, commonality, is_vacuous, mass_from_commonality

SEMI = (Axiom.SYMMETRY, Axiom.DECOMPOSITION, Axiom.WEAK_UNION, Axiom.CONTRACTION)


def test_axiom_query_validation():
    with pytest.raises(ValueError):
        AxiomQuery(Axiom.DECOMPOSITION, {"X"}, {"Y"})
    with pytest.raises(ValueError):
        AxiomQuery(Axiom.SYMMETRY, {"X"}, {"X", "Y"})
    with pytest.raises(ValueError):
        AxiomQuery(Axiom.SYMMETRY, set(), {"Y"})


def test_statements_follow_axiom_shapes():
    q, r, s, p = (frozenset({n}) for n in "QRSP")
    assert AxiomQuery(Axiom.SYMMETRY, q, r, p=p).statements() == ([(q, r, p)], (r, q, p))
    assert AxiomQuery(Axiom.WEAK_UNION, q, r, s, p).statements() == ([(q, r | s, p)], (q, r, p | s))
    assert AxiomQuery(Axiom.CONTRACTION, q, r, s, p).statements() == ([(q, r, p), (q, s, p | r)], (q, r | s, p))
    assert AxiomQuery(Axiom.INTERSECTION, q, r, s, p).statements() == (
        [(q, s, p | r), (r, s, p | q)], (q | r, s, p))


def test_tuple_counts_for_four_variables():
    frame = gen_random(GeneratorSpec((2, 2, 2, 2))).frame
    assert len(axiom_tuples(frame, Axiom.SYMMETRY)) == 110
    for axiom in Axiom:
        if axiom is not Axiom.SYMMETRY:
            assert len(axiom_tuples(frame, axiom)) == 84


def test_chain_intersection(load):
    chain = load("ex-chain")
    shenoy = check_axiom(chain, AxiomQuery(Axiom.INTERSECTION, {"Y"}, {"Z"}, {"X"}, relation=Relation.SHENOY))
    assert shenoy.status is Status.VIOLATED
    intrinsic = check_axiom(chain, AxiomQuery(Axiom.INTERSECTION, {"Y"}, {"Z"}, {"X"}))
    assert intrinsic.status is Status.GATE_FAILED


def test_intrinsic_axioms_refuse_signed_functions(load):
    member = load("ex-twocond")
    from dsgraphoid.independence import anticonditional_canonical
    signed = anticonditional_canonical(member, "Y")
    with pytest.raises(ValueError):
        check_axiom(signed, AxiomQuery(Axiom.SYMMETRY, {"X"}, {"Y"}))


def test_vacuous_sweep_holds_everywhere():
    frame = build_frame([(n, ("a", "b")) for n in "ABC"])
    verdicts = sweep(MassFunction.vacuous(frame))
    assert verdicts and all(v.status is Status.HOLDS for v in verdicts)


def test_unconditional_sweep_skips_conditioned_tuples(load):
    verdicts = sweep(load("ex-xor"), [Axiom.SYMMETRY, Axiom.DECOMPOSITION], Relation.UNCONDITIONAL)
    assert verdicts
    assert all(not v.conclusion[0][2] for v in verdicts)
    assert all(v.status in (Status.HOLDS, Status.PREMISES_FALSE) for v in verdicts)


@settings(max_examples=10)
@given(st.integers(0, 10_000), st.booleans())
def test_semi_graphoid_never_violated(seed, diverse):
    m = gen_random(GeneratorSpec((2, 2, 2), focal_count=3, diverse=diverse, seed=seed))
    for relation in (Relation.SHENOY, Relation.INTRINSIC):
        assert not [v for v in sweep(m, SEMI, relation) if v.status is Status.VIOLATED]


def test_random_diverse_functions_never_violate_any_axiom():
    statuses = set()
    for seed in range(100):
        m = gen_random(GeneratorSpec((2, 2, 2, 2), focal_count=4, diverse=True, seed=seed))
        statuses |= {v.status for v in sweep(m)}
    assert Status.VIOLATED not in statuses and Status.HOLDS in statuses


# -- generator ----------------------------------------------------------------------

def test_generator_is_deterministic():
    spec = GeneratorSpec((2, 3), focal_count=5, seed=7)
    assert gen_random(spec) == gen_random(spec)
    others = {tuple(sorted(gen_random(GeneratorSpec((2, 3), 5, seed=s)).masses.items())) for s in range(10)}
    assert len(others) > 1


def test_generator_flags():
    frame_names = GeneratorSpec(((("A", 2)), ("B", 3))).frame().names
    assert frame_names == ("A", "B")
    assert GeneratorSpec((2, 2)).frame().variables[1].domain == ("x21", "x22")
    for seed in range(20):
        diverse = gen_random(GeneratorSpec((2, 2), diverse=True, seed=seed))
        assert diverse.mass(diverse.frame.full_mask) >= Fraction(1, 10) and classify(diverse).diverse
        prob = gen_random(GeneratorSpec((2, 2), probabilistic=True, diverse=True, seed=seed))
        assert set(prob.masses) == {1 << i for i in range(4)}
        sparse = gen_random(GeneratorSpec((2, 2), focal_count=2, probabilistic=True, seed=seed))
        assert len(sparse.masses) == 2 and classify(sparse).probabilistic
    with pytest.raises(ValueError):
        gen_random(GeneratorSpec((2, 2), proper=False))


def test_factorized_generation_factors():
    for seed in range(15):
        m = gen_random(GeneratorSpec((2, 2, 2), 3, factorized=(("X1", "X2"), ("X2", "X3")), seed=seed))
        assert factorization_oracle(m, "X1", "X3", "X2").verdict is Verdict.TRUE


@settings(max_examples=25)
@given(st.integers(0, 10_000), st.booleans())
def test_probabilistic_functions_embed_classical_independence(seed, factor):
    blocks = (("X1", "X3"), ("X2", "X3")) if factor else None
    m = gen_random(GeneratorSpec((2, 2, 2), probabilistic=True, diverse=True, factorized=blocks, seed=seed))
    expected = oracle.probabilistic_ci(to_sets(m), domains(m.frame), {"X1"}, {"X2"}, {"X3"})
    assert factor <= expected
    rep = intrinsic_independent(m, "X1", "X2", "X3")
    assert (rep.verdict is Verdict.TRUE) == expected
    assert (factorization_oracle(m, "X1", "X2", "X3").verdict is Verdict.TRUE) == expected
    marginal = oracle.probabilistic_ci(to_sets(m), domains(m.frame), {"X1"}, {"X2"}, set())
    assert (independent_unconditional(m, "X1", "X2").verdict is Verdict.TRUE) == marginal


def test_ternary_product_is_unconditionally_independent():
    for seed in range(10):
        m = gen_random(GeneratorSpec((3, 3), probabilistic=True, diverse=True, factorized=(("X1",), ("X2",)), seed=seed))
        assert independent_unconditional(m, "X1", "X2").verdict is Verdict.TRUE


# -- experiments --------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_universe_focal(n):
    assert universe_focal_experiment(n, Fraction(1, 10)).verdict is Verdict.FALSE
    assert universe_focal_experiment(n, 0).verdict is Verdict.TRUE
    assert universe_focal_experiment(n, 1).verdict is Verdict.TRUE
    with pytest.raises(ValueError):
        universe_focal_experiment(n, 2)


def test_self_removal_is_vacuous():
    for seed in range(10):
        m = gen_random(GeneratorSpec((2, 2), diverse=True, seed=seed))
        sigma = commonality(m)
        assert is_vacuous(mass_from_commonality(remove_shenoy(sigma, sigma)))


def test_removal_counterexample_is_found():
    found = removal_counterexample_search()
    assert found is not None
    assert found.negative and all(v < 0 for _, v in found.negative)
    # the reported masses really are the Mobius transform of the removal
    sigma = commonality(found.sigma)
    rho = marginal_table(found.sigma, found.onto)
    assert mass_from_commonality(remove_shenoy(sigma, rho)).masses == found.masses


def test_diversity_relaxation_hook():
    counts = diversity_relaxation_experiment(zeros=1, seeds=range(3))
    assert sum(counts.values()) == 3 * sum(len(axiom_tuples(gen_random(GeneratorSpec((2, 2, 2))).frame, a))
                                            for a in Axiom)
    assert counts == diversity_relaxation_experiment(zeros=1, seeds=range(3))
    with pytest.raises(ValueError):
        diversity_relaxation_experiment(zeros=8, seeds=[0])
