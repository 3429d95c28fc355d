import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brooks_oracle, defect_oracle
from xratio.circle import INF, Configuration, canonical_cross_ratio, canonical_phi
from xratio.cocycles import CrossRatioTable
from xratio.fixtures import Lcg64, random_config, random_mobius
from xratio.mobius import (
    G_PINGPONG,
    H_PINGPONG,
    IDENTITY,
    CollisionError,
    IdentityMapError,
    MobiusMap,
    OrbitEscapeError,
    OrientationError,
    WordEvaluator,
    apply,
    basepoint_change_defects,
    brooks,
    brooks_counting,
    classify,
    compose,
    exponent_sum,
    fixed_points,
    invariance_check,
    inverse,
    north_south_check,
    nu_cochain,
    orbit_cocycle,
    orbit_cocycle_defects,
    prism_transfer,
    quasimorphism_defect,
    reduce_word,
    reduced_words,
)

G = MobiusMap(2, 0, 0, 1)
T = MobiusMap(1, 1, 0, 1)


def test_canonical_representative():
    assert MobiusMap(4, 0, 0, 2) == G
    assert MobiusMap(-2, 0, 0, -1) == G
    assert MobiusMap(Fraction(1, 2), 0, 0, Fraction(1, 4)) == G
    assert str(MobiusMap.parse("6 3 / 0 3")) == "2 1 / 0 1"
    with pytest.raises(OrientationError):
        MobiusMap(0, 1, 1, 0)
    with pytest.raises(OrientationError):
        MobiusMap(0, 0, 0, 0)


def test_apply_examples():
    assert apply(G, 1) == 2
    assert apply(G, INF) is INF
    assert apply(MobiusMap(1, 1, -1, 1), 0) == 1
    assert apply(MobiusMap(1, 1, -1, 1), 1) is INF
    assert apply(MobiusMap(1, 1, -1, 1), INF) == -1


def test_compose_examples():
    assert compose(G, inverse(G)) == IDENTITY
    assert compose(IDENTITY, T) == T
    assert compose(G, T) == MobiusMap(2, 2, 0, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_compose_is_functional_composition(seed):
    rng = Lcg64(seed)
    m, n = random_mobius(rng), random_mobius(rng)
    for x in [0, 1, -1, Fraction(3, 7), INF, 5]:
        assert apply(compose(m, n), x) == apply(m, apply(n, x))
    assert compose(m, inverse(m)) == IDENTITY


@pytest.mark.parametrize(
    "m,kind",
    [(G, "hyperbolic"), (T, "parabolic"), (MobiusMap(0, 1, -1, 0), "elliptic"), (IDENTITY, "identity")],
)
def test_classify_examples(m, kind):
    assert classify(m) == kind


def test_fixed_points_diagonal():
    fp = fixed_points(G)
    assert fp.exact
    assert fp.attracting is INF
    assert fp.repelling == 0
    assert fp.multipliers[INF] == Fraction(1, 2)
    assert fp.multipliers[0] == 2


def test_fixed_points_parabolic_at_infinity():
    fp = fixed_points(T)
    assert fp.kind == "parabolic"
    assert fp.points == (INF,)
    assert fp.multipliers[INF] == 1


def test_fixed_points_irrational_have_isolating_intervals():
    m = MobiusMap(2, 1, 1, 1)
    fp = fixed_points(m)
    assert not fp.exact
    # fixed points solve x^2 - x - 1 = 0; the attracting one is the golden ratio
    f = lambda x: x * x - x - 1  # noqa: E731
    for key in ("attracting", "repelling"):
        lo, hi = fp.intervals[key]
        assert lo < hi and hi - lo < Fraction(1, 2**30)
        assert f(lo) * f(hi) < 0
    lo, hi = fp.intervals["attracting"]
    assert lo > 1
    x = Fraction(0)
    for _ in range(30):
        x = apply(m, x)
    assert abs(x - lo) < Fraction(1, 10**6)


def test_fixed_points_other_cases():
    assert fixed_points(MobiusMap(0, 1, -1, 0)).points == ()
    with pytest.raises(IdentityMapError):
        fixed_points(IDENTITY)
    fp = fixed_points(MobiusMap(3, 0, 1, 1))
    assert set(fp.points) == {0, 2}
    assert fp.attracting == 2


def test_north_south():
    assert north_south_check(G, [1, -1, Fraction(1, 3), 7]).ok
    assert north_south_check(inverse(G), [1, -1, INF, 5]).ok
    assert north_south_check(MobiusMap(3, 0, 1, 1), [1, -1, INF, 5, Fraction(-1, 2)]).ok


def test_invariance_examples():
    assert invariance_check("canonical", G, Configuration.standard(4)) == []
    rng = Lcg64(7)
    for _ in range(20):
        assert invariance_check("canonical", random_mobius(rng), random_config(rng, 5)) == []


def test_invariance_on_a_permuted_table():
    cfg = Configuration([0, 1, INF, -1])
    s = MobiusMap(1, 1, -1, 1)  # order-4 rotation 0 -> 1 -> inf -> -1 -> 0
    assert invariance_check(CrossRatioTable.canonical(cfg), s, cfg) == []
    t = CrossRatioTable.from_function(4, lambda a, b, c, d: a - b)
    assert invariance_check(t, s, cfg)
    with pytest.raises(OrbitEscapeError):
        invariance_check(CrossRatioTable.canonical(cfg), G, cfg)


def test_orientation_reversing_matrix_is_rejected():
    # x -> -x reverses the cyclic order, so it cannot be built at all
    with pytest.raises(OrientationError):
        MobiusMap(-1, 0, 0, 1)
    assert canonical_cross_ratio(0, 2, 1, 3) == -canonical_cross_ratio(0, -2, -1, -3)


def test_orbit_cocycle_examples():
    g, h = G, MobiusMap(1, 1, -1, 1)
    assert orbit_cocycle(canonical_phi, 0, IDENTITY, g, compose(g, g)) == 0
    assert orbit_cocycle(canonical_phi, 1, IDENTITY, g, h) == Fraction(1, 2)
    assert orbit_cocycle(canonical_phi, 5, IDENTITY, IDENTITY, IDENTITY) == 0


def test_nu_cochain_examples():
    with pytest.raises(CollisionError):
        nu_cochain(canonical_cross_ratio, 0, 1, IDENTITY)
    with pytest.raises(CollisionError):
        nu_cochain(canonical_cross_ratio, 0, INF, T)
    with pytest.raises(CollisionError):
        nu_cochain(canonical_cross_ratio, 0, 1, MobiusMap(2, 1, 1, 1))
    # gamma 0 = 1/2 and gamma 1 = 4/3: the pairs {1/2, 1} and {0, 4/3} do not interleave
    gamma = MobiusMap(3, 1, 1, 2)
    assert (apply(gamma, 0), apply(gamma, 1)) == (Fraction(1, 2), Fraction(4, 3))
    assert nu_cochain(canonical_cross_ratio, 0, 1, gamma) == 0
    # a linked instance: gamma 0 = 2 lies between eta = 1 and gamma eta = 3
    assert nu_cochain(canonical_cross_ratio, 0, 1, MobiusMap(1, 2, 0, 1)) == canonical_cross_ratio(2, 1, 0, 3)


def test_nu_cochain_on_table():
    cfg = Configuration([0, 1, 2, 3])
    t = CrossRatioTable.canonical(cfg)
    assert nu_cochain(t, 0, 1, MobiusMap(1, 2, 0, 1)) == canonical_cross_ratio(2, 1, 0, 3)
    with pytest.raises(OrbitEscapeError):
        nu_cochain(t, 0, 1, MobiusMap(1, 7, 0, 1))


def test_pingpong_pair():
    assert H_PINGPONG == MobiusMap(3, -1, -1, 3)
    ev = WordEvaluator()
    words = list(reduced_words(4))
    assert len(words) == 1 + 4 + 12 + 36 + 108
    assert len({ev(w) for w in words}) == len(words)
    assert ev("gG") == IDENTITY
    assert ev("gh") == compose(G_PINGPONG, H_PINGPONG)


def test_word_reduction():
    assert reduce_word("ghHg") == "gg"
    assert reduce_word("gGhH") == ""
    with pytest.raises(ValueError):
        reduce_word("gx")


def test_prism_transfer_degenerate_cases():
    ev = WordEvaluator()
    for w1, w2 in itertools.product(list(reduced_words(2)), repeat=2):
        assert prism_transfer(canonical_phi, 1, 1, ev(w1), ev(w2)) == 0
    for w in reduced_words(2):
        assert prism_transfer(canonical_phi, 0, INF, ev(w), ev(w)) == 0


def test_prism_coboundary_directly():
    # uses the public pieces rather than the vectorized scan
    ev = WordEvaluator()
    maps = [ev(w) for w in reduced_words(2)]
    xi, eta = Fraction(1, 3), INF

    def h(a, b):
        return prism_transfer(canonical_phi, xi, eta, a, b)

    for a, b, c in itertools.product(maps, repeat=3):
        diff = orbit_cocycle(canonical_phi, eta, a, b, c) - orbit_cocycle(canonical_phi, xi, a, b, c)
        assert diff == h(b, c) - h(a, c) + h(a, b)


def test_basepoint_scan_and_orbit_cocycle_scan():
    ev = WordEvaluator()
    words = list(reduced_words(2))
    maps = [ev(w) for w in words]
    assert basepoint_change_defects(canonical_phi, 0, INF, maps, words) == []
    counts = orbit_cocycle_defects(canonical_phi, Fraction(1, 2), maps)
    assert counts["alternation"] == 0 and counts["closedness"] == 0


def test_basepoint_scan_detects_a_broken_phi():
    ev = WordEvaluator()
    maps = [ev(w) for w in reduced_words(2)]

    def skew(x, y, z):
        # alternating but not closed: doubles the weight of triangles through 0
        return canonical_phi(x, y, z) * (2 if 0 in (x, y, z) else 1)

    assert basepoint_change_defects(skew, 0, 1, maps)


def test_brooks_examples():
    assert brooks_counting("g", "ggh") == 2
    assert brooks_counting("g", "G") == -1
    assert brooks_counting("gh", "ghgh") == 2
    assert brooks_counting("gh", "HG") == -1
    with pytest.raises(ValueError):
        brooks_counting("gG", "g")


@pytest.mark.parametrize("word", ["gh", "gg", "ghG"])
def test_brooks_matches_oracle(word):
    enc = {"g": 1, "G": -1, "h": 2, "H": -2}
    pattern = tuple(enc[c] for c in word)
    for w in reduced_words(4):
        assert brooks_counting(word, w) == brooks_oracle(pattern, tuple(enc[c] for c in w))


def test_defects():
    assert quasimorphism_defect(exponent_sum("g"), 4) == 0
    assert quasimorphism_defect(exponent_sum("h"), 4) == 0
    assert quasimorphism_defect(lambda w: 0, 3) == 0
    want = defect_oracle(lambda w: brooks_oracle((1, 2), w), 3)
    assert quasimorphism_defect(brooks("gh"), 3) == want == 1


def test_invariance_agrees_with_direct_evaluation():
    rng = Lcg64(2024)
    for _ in range(40):
        m, cfg = random_mobius(rng), random_config(rng, 5)
        moved = [apply(m, x) for x in cfg.points]
        for q in itertools.permutations(range(5), 4):
            before = canonical_cross_ratio(*(cfg[i] for i in q))
            assert canonical_cross_ratio(*(moved[i] for i in q)) == before
        assert invariance_check("canonical", m, cfg) == []
