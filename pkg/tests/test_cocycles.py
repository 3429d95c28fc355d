import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cocycle_dim_oracle, crossratio_dim_oracle
from xratio.circle import Configuration, canonical_phi, label_cyclic
from xratio.cocycles import (
    AltCochain2,
    AxiomViolationError,
    CrossRatioTable,
    NotACocycleError,
    SizeError,
    alternation_defects,
    check_axioms,
    coboundary1,
    coboundary2,
    cochain_from_crossratio,
    cocycle_defects,
    crossratio_from_cocycle,
    is_cocycle,
    max_value,
    nu_spread,
    phi_from_crossratio,
    solution_space,
    space_dimension,
    sup_norm,
    triples,
)
from xratio.fixtures import Lcg64, random_cocycle, random_config, random_crossratio

CANON4 = CrossRatioTable.canonical(Configuration.standard(4))


def test_check_axioms_examples():
    assert check_axioms(CrossRatioTable.canonical(Configuration.standard(5))) == []
    assert check_axioms(CrossRatioTable.zero(5)) == []
    vals = dict(CrossRatioTable.canonical(Configuration.standard(5)).values)
    vals[(0, 1, 2, 3)] += 1
    bad = check_axioms(CrossRatioTable(5, vals))
    assert bad
    assert any((0, 1, 2, 3) == v.instance[:4] or v.instance == (0, 1, 2, 3) for v in bad)


def test_phi_examples():
    assert phi_from_crossratio(CANON4, 0, 1, 2, 3) == Fraction(1, 2)
    assert phi_from_crossratio(CANON4, 0, 2, 1, 3) == Fraction(-1, 2)
    zero = CrossRatioTable.zero(4)
    for tr in triples(4):
        nu = next(k for k in range(4) if k not in tr)
        assert phi_from_crossratio(zero, *tr, nu) == 0


def test_phi_rejects_colliding_auxiliary_label():
    with pytest.raises(ValueError):
        phi_from_crossratio(CANON4, 0, 1, 2, 2)


def test_orientation_cochain_on_four_points():
    phi = cochain_from_crossratio(CANON4)
    pos = Configuration.standard(4).positions
    for tr in triples(4):
        want = Fraction(1, 2) if label_cyclic(pos, *tr) else Fraction(-1, 2)
        assert phi(*tr) == want


def test_zero_table_gives_zero_cochain():
    assert cochain_from_crossratio(CrossRatioTable.zero(5)) == AltCochain2.zero(5)


def test_cochain_rejects_invalid_table():
    vals = dict(CANON4.values)
    vals[(0, 2, 1, 3)] = Fraction(5)
    with pytest.raises(AxiomViolationError):
        cochain_from_crossratio(CrossRatioTable(4, vals))
    with pytest.raises(SizeError):
        cochain_from_crossratio(CrossRatioTable.zero(3))


def test_coboundary2_of_non_cocycle():
    # alternating, phi(0,1,2) = 1 and zero on the other orbits
    def f(a, b, c):
        if sorted((a, b, c)) != [0, 1, 2] or len({a, b, c}) < 3:
            return 0
        return 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1

    phi = AltCochain2.from_function(4, f)
    assert alternation_defects(phi) == []
    assert coboundary2(phi)(3, 0, 1, 2) == 1
    assert not is_cocycle(phi)
    with pytest.raises(NotACocycleError):
        crossratio_from_cocycle(phi)


def test_coboundary2_of_valid_phi_vanishes():
    phi = cochain_from_crossratio(CrossRatioTable.canonical(Configuration.standard(5)))
    assert cocycle_defects(phi) == []
    assert coboundary2(AltCochain2.zero(4))(0, 1, 2, 3) == 0


def test_coboundary1_examples():
    f = {0: Fraction(3), 1: Fraction(-1, 2), 2: Fraction(7), 3: Fraction(0)}
    closed = coboundary1(lambda x, y: f[y] - f[x])
    const = coboundary1(lambda x, y: Fraction(5))
    prod = coboundary1(lambda x, y: x * y)
    for x, y, z in itertools.product(range(4), repeat=3):
        assert closed(x, y, z) == 0
        assert const(x, y, z) == 5
        assert prod(x, y, z) == y * z - x * z + x * y


def test_crossratio_from_orientation_cochain_is_canonical():
    pts = Configuration.standard(4).points
    phi = AltCochain2.from_function(4, lambda a, b, c: canonical_phi(pts[a], pts[b], pts[c]))
    assert crossratio_from_cocycle(phi) == CANON4
    assert crossratio_from_cocycle(AltCochain2.zero(4)).is_zero()


def test_sup_norm_examples():
    canon = CrossRatioTable.canonical(Configuration.standard(6))
    assert sup_norm(canon) == 1
    assert sup_norm(CrossRatioTable.zero(4)) == 0
    assert sup_norm(3 * canon) == 3
    assert max_value(-3 * canon) == 3


@pytest.mark.parametrize("n", [4, 5, 6])
def test_dimensions_match_oracle(n):
    expected = n * (n - 1) // 2 - (n - 1)
    assert space_dimension(n, "axioms_only") == expected == crossratio_dim_oracle(n)
    assert space_dimension(n, "alternating_cocycles") == expected == cocycle_dim_oracle(n)
    assert space_dimension(n, "axioms_plus_vanishing_on_ordered") == 1 == crossratio_dim_oracle(n, True)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_vanishing_basis_is_canonical_multiple(n):
    (vec,) = solution_space(n, "axioms_plus_vanishing_on_ordered")
    canon = CrossRatioTable.canonical(Configuration.standard(n))
    ratio = {vec.get(q, 0) / v for q, v in canon.values.items() if v}
    assert len(ratio) == 1
    assert all(vec.get(q, 0) == 0 for q, v in canon.values.items() if not v)


def test_solution_space_bounds():
    with pytest.raises(SizeError):
        space_dimension(3, "axioms_only")
    with pytest.raises(ValueError):
        space_dimension(4, "everything")


def test_solution_space_vectors_satisfy_axioms():
    for vec in solution_space(5, "axioms_only"):
        t = CrossRatioTable.from_function(5, lambda *q: vec.get(q, 0))
        assert check_axioms(t) == []


seeds = st.integers(0, 2**64 - 1)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(4, 6))
def test_round_trip_table(seed, n):
    rng = Lcg64(seed)
    t = random_crossratio(rng, random_config(rng, n))
    phi = cochain_from_crossratio(t)
    assert alternation_defects(phi) == []
    assert cocycle_defects(phi) == []
    assert crossratio_from_cocycle(phi).values == t.values
    for tr in itertools.combinations(range(n), 3):
        assert len(nu_spread(t, *tr)) == 1
    assert phi.sup() <= Fraction(3, 2) * sup_norm(t)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(4, 6))
def test_round_trip_cochain(seed, n):
    phi = random_cocycle(Lcg64(seed), n)
    t = crossratio_from_cocycle(phi)
    assert check_axioms(t) == []
    assert cochain_from_crossratio(t) == phi


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.fractions(max_denominator=5)))
def test_d_squared_is_zero(b):
    d2 = coboundary2(coboundary1(lambda x, y: b.get((x, y), Fraction(0))))
    for q in itertools.product(range(5), repeat=4):
        assert d2(*q) == 0


def test_bound_is_attained_up_to_canonical():
    # |phi| = 1/2 for the canonical table, well inside 3/2
    t = CrossRatioTable.canonical(Configuration.standard(6))
    assert cochain_from_crossratio(t).sup() == Fraction(1, 2)
