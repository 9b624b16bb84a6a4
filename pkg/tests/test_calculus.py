from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracle
from conftest import domains, to_sets
from dsgraphoid.calculus import (
    combine,
    condition_shafer,
    project,
    removal_constant,
    remove_shenoy,
    vacuous_extend,
)
from dsgraphoid.errors import FrameError, RemovalUndefined, TotalConflict
from dsgraphoid.frame import EventSet, build_frame
from dsgraphoid.massfun import (
    MassFunction,
    commonality,
    is_diverse,
    mass_from_commonality,
)
from strategies import frame_of, proper_functions


def test_cano_combination_conflict_and_universe(load):
    out = combine(load("ex-cano-1"), load("ex-cano-2"))
    assert out.conflict == Fraction(9, 25)
    assert out.result.mass(out.result.frame.full_mask) == Fraction(1, 32)


def test_cano_combination_matches_naive(load):
    a, b = load("ex-cano-1"), load("ex-cano-2")
    out = combine(a, b)
    target = domains(out.result.frame)
    ea = oracle.extend(to_sets(a), domains(a.frame), target)
    eb = oracle.extend(to_sets(b), domains(b.frame), target)
    masses, conflict = oracle.dempster(ea, eb)
    assert conflict == out.conflict
    assert to_sets(out.result) == masses


def test_vacuous_is_identity(load):
    m = load("ex-square")
    out = combine(MassFunction.vacuous(m.frame), m)
    assert out.result == m and out.conflict == 0


def test_total_conflict(xy):
    a = MassFunction(xy, {1: 1})
    b = MassFunction(xy, {2: 1})
    with pytest.raises(TotalConflict):
        combine(a, b)


def test_projection_examples(load):
    diag = load("ex-diag")
    proj = project(diag, {"Y", "Z"})
    assert proj == load("ex-diag-yz")
    sq_y = project(load("ex-square"), "Y")
    assert sq_y == MassFunction.vacuous(sq_y.frame)
    assert project(diag, {"X", "Y", "Z"}) == diag
    unit = project(diag, ())
    assert unit.frame.size == 1 and unit.masses == {1: 1}


def test_vacuous_extension_examples(load):
    ext = vacuous_extend(load("ex-diag-xy"), load("ex-diag").frame)
    assert ext == load("ex-diag-cond")
    assert project(ext, {"X", "Y"}) == load("ex-diag-xy")
    f = load("ex-diag").frame
    assert vacuous_extend(MassFunction.vacuous(f.subframe({"X"})), f) == MassFunction.vacuous(f)
    with pytest.raises(FrameError):
        vacuous_extend(load("ex-diag"), f.subframe({"X"}))


def test_square_conditioning(load):
    sq = load("ex-square")
    for x in ("x1", "x2"):
        out = condition_shafer(sq, EventSet.cylinder(sq.frame, X=x))
        y = project(out.result, "Y")
        # each focal meets the row in one or two cells  [DERIVED]
        assert y.masses == {1: Fraction(1, 4), 2: Fraction(1, 4), 3: Fraction(1, 2)}


def test_conditioning_edge_cases(load):
    sq = load("ex-square")
    out = condition_shafer(sq, EventSet.full(sq.frame))
    assert out.result == sq and out.conflict == 0
    chain = load("ex-chain")
    with pytest.raises(TotalConflict):
        condition_shafer(chain, EventSet.of(chain.frame, [("x1", "y2", "z1")]))
    with pytest.raises(FrameError):
        condition_shafer(sq, EventSet.empty(sq.frame))


def test_removal_identities(load):
    m = load("ex-cano-1")
    sigma = commonality(m)
    assert removal_constant(sigma, sigma) == 1
    vac = mass_from_commonality(remove_shenoy(sigma, sigma))
    assert vac == MassFunction.vacuous(m.frame)
    rho = commonality(MassFunction.vacuous(m.frame))
    assert remove_shenoy(sigma, rho) == sigma


def test_removal_undefined_when_constant_not_positive(xy):
    # rho positive only on {(x1 y1)}; sigma vanishes there, so K = 0
    sigma = commonality(MassFunction(xy, {2: 1}))
    rho = commonality(MassFunction(xy, {1: 1}))
    with pytest.raises(RemovalUndefined):
        remove_shenoy(sigma, rho)


pairs = st.sampled_from([(2, 2), (2, 3), (3,), (2, 2, 2)]).map(frame_of).flatmap(
    lambda f: st.tuples(proper_functions(st.just(f)), proper_functions(st.just(f)))
)


@given(pairs)
def test_q_product_law(pair):
    a, b = pair
    try:
        out = combine(a, b)
    except TotalConflict:
        assume(False)
    qa, qb, qc = commonality(a), commonality(b), commonality(out.result)
    ratios = {qc[k] / (qa[k] * qb[k]) for k, _ in qc.items() if qa[k] * qb[k] != 0}
    assert len(ratios) == 1 and next(iter(ratios)) > 0
    assert all(qc[k] == 0 for k, _ in qc.items() if qa[k] * qb[k] == 0)


triples = st.sampled_from([(2, 2), (3,)]).map(frame_of).flatmap(
    lambda f: st.tuples(*[proper_functions(st.just(f), universe=True)] * 3)
)


@given(triples)
def test_commutative_and_associative(t):
    a, b, c = t
    assert combine(a, b).result == combine(b, a).result
    left = combine(combine(a, b).result, c).result
    right = combine(a, combine(b, c).result).result
    assert left == right


@given(proper_functions(st.sampled_from([(2,), (3,), (2, 2)]).map(frame_of)))
def test_extension_commonality_law(m):
    target = build_frame(list(m.frame.variables) + [("W", ("w1", "w2"))])
    ext = vacuous_extend(m, target)
    from dsgraphoid.frame import project_mask

    qe, qm = commonality(ext), commonality(m)
    for a, v in qe.items():
        assert v == qm[project_mask(a, target, m.frame)]


@given(st.data())
def test_projection_distributes_over_combination(data):
    # alpha over {V0}, beta over {V0, V1}; extending alpha and projecting back is harmless
    f = frame_of((2, 2))
    alpha = data.draw(proper_functions(st.just(f.subframe({"V0"})), universe=True))
    beta = data.draw(proper_functions(st.just(f), universe=True))
    big = build_frame(list(f.variables) + [("W", ("w1", "w2"))])
    lhs = project(combine(vacuous_extend(alpha, big), beta).result, {"V0", "V1"})
    assert lhs == combine(alpha, beta).result


@given(st.data())
def test_diversity_preservation(data):
    f = frame_of((2, 2))
    a = data.draw(proper_functions(st.just(f), universe=True))
    b = data.draw(proper_functions(st.just(f)))
    assume(is_diverse(b))
    assert is_diverse(combine(a, b).result)
    big = build_frame(list(f.variables) + [("W", ("w1", "w2"))])
    assert is_diverse(vacuous_extend(a, big))
    assert is_diverse(project(b, {"V0"}))
