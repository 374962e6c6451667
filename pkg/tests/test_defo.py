from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defkit.core import Polynomial
from defkit.core.poly import in_truncated_ideal
from defkit.defo import (
    ArtinRing,
    MCElement,
    def_equations,
    dual_numbers,
    gauge_transform,
    kuranishi,
    mc_residual,
    primary_obstruction,
    prorepresentable_formal,
    splitting,
    truncated_line,
)
from defkit.graded import (
    DGLA,
    GradedBasis,
    abelian,
    build_exterior,
    build_nonabelian2,
    build_sl,
    cohomology,
    tensor_with_algebra,
)
from defkit.models import build_Q, weighted_six

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def sl2_ext2():
    return tensor_with_algebra(build_sl(2), build_exterior(2))


def test_artin_ring_truncation():
    A = truncated_line(3)
    t = A.gen("t")
    assert A.mul(t, A.mul(t, t)).is_zero()
    assert A.mul(t, t) == Polynomial(("t",), {(2,): 1})
    B = ArtinRing(("x", "y"), 3, relations=((1, 1),))
    assert B.mul(B.gen("x"), B.gen("y")).is_zero()
    assert len(B.basis_monomials()) == 7


def test_residual_zero_element():
    L = sl2_ext2()
    A = truncated_line(3)
    assert mc_residual(L, A, MCElement(L, A, {})) == {}


def test_residual_first_order_closed():
    L = weighted_six()
    A = dual_numbers()
    eps = A.gen("eps")
    x = MCElement.from_names(L, A, {"u": eps, "v": eps.scale(3)})
    assert mc_residual(L, A, x) == {}


def test_residual_sl2_example():
    L = sl2_ext2()
    A = truncated_line(3)
    t = A.gen("t")
    x = MCElement.from_names(L, A, {"E12|b1": t, "E21|b2": t})
    res = mc_residual(L, A, x)
    assert L.describe({k: 1 for k in res}) == {"H1|b1^b2": "1"}
    assert res[L.basis.index("H1|b1^b2")] == t * t


def test_mc_element_validation():
    L = weighted_six()
    A = truncated_line(3)
    with pytest.raises(ValueError):
        MCElement.from_names(L, A, {"e": A.gen("t")})
    with pytest.raises(ValueError):
        MCElement.from_names(L, A, {"u": A.const(1)})
    with pytest.raises(ValueError):
        mc_residual(L, A, {L.basis.index("b"): A.gen("t")})


def test_gauge_zero_parameter():
    L = weighted_six()
    A = truncated_line(4)
    t = A.gen("t")
    x = MCElement.from_names(L, A, {"v": t})
    assert gauge_transform(L, A, {}, x).value == x.value


def test_gauge_first_order():
    B = GradedBasis.of([("a", 0), ("b", 1)])
    L = DGLA(B, {}, {0: {1: 1}})
    A = dual_numbers()
    eps = A.gen("eps")
    x = MCElement(L, A, {1: eps.scale(2)})
    y = gauge_transform(L, A, {0: eps.scale(5)}, x)
    assert y.value == {1: eps.scale(-3)}


def test_gauge_rejects_bad_parameter():
    L = weighted_six()
    A = truncated_line(3)
    x = MCElement(L, A, {})
    with pytest.raises(ValueError):
        gauge_transform(L, A, {L.basis.index("u"): A.gen("t")}, x)
    with pytest.raises(ValueError):
        gauge_transform(L, A, {L.basis.index("e"): A.const(1)}, x)


def _poly(A, cs):
    t = A.gen("t")
    out = A.zero()
    p = t
    for c in cs:
        out = out + p.scale(c)
        p = A.mul(p, t)
    return out


@settings(max_examples=30, deadline=None)
@given(st.lists(coeff, min_size=3, max_size=3), st.lists(coeff, min_size=3, max_size=3),
       st.lists(coeff, min_size=4, max_size=4))
def test_gauge_preserves_mc_sl2(a1, a2, xs):
    L = sl2_ext2()
    A = truncated_line(5)
    # commuting slots: both proportional to e, plus an h-component in one slot only
    x = MCElement.from_names(L, A, {"E12|b1": _poly(A, xs[:2]), "E12|b2": _poly(A, xs[2:])})
    assert mc_residual(L, A, x) == {}
    a = {L.basis.index("H1|1"): _poly(A, a1), L.basis.index("E21|1"): _poly(A, a2)}
    y = gauge_transform(L, A, a, x)
    assert mc_residual(L, A, y) == {}


@settings(max_examples=30, deadline=None)
@given(st.lists(coeff, min_size=3, max_size=3), coeff, coeff)
def test_gauge_preserves_mc_with_differential(a1, p, r):
    L = weighted_six()
    A = truncated_line(5)
    t = A.gen("t")
    # v-direction is unobstructed; u-direction needs the correction -u^2 w
    x = MCElement.from_names(L, A, {"v": t.scale(p)})
    assert mc_residual(L, A, x) == {}
    a = {L.basis.index("e"): _poly(A, a1)}
    assert mc_residual(L, A, gauge_transform(L, A, a, x)) == {}
    x = MCElement.from_names(L, A, {"u": t.scale(r), "v": t.scale(-r), "w": A.zero()})
    assert mc_residual(L, A, x) == {}
    assert mc_residual(L, A, gauge_transform(L, A, a, x)) == {}


def test_splitting_decomposes_each_degree():
    L = weighted_six()
    S = splitting(L)
    for i, s in S.degrees.items():
        assert len(s.boundaries) + len(s.harmonic) + len(s.coexact) == len(L.in_degree(i))
    assert S.coordinate_names(1) == ["u", "v"]
    assert S.coordinate_names(2) == ["k"]
    assert S.homotopy == {L.basis.index("b"): {L.basis.index("w"): 1}}


def test_kuranishi_abelian_is_zero():
    L = tensor_with_algebra(abelian(2), build_exterior(2))
    K, _ = kuranishi(L, 4)
    assert all(p.is_zero() for p in K.components)


def test_kuranishi_rejects_low_order():
    with pytest.raises(ValueError):
        kuranishi(weighted_six(), 1)


@pytest.mark.parametrize("N", [2, 3, 5])
def test_kuranishi_formal_is_half_bracket(N):
    L = sl2_ext2()
    K, _ = kuranishi(L, N)
    assert K.components == primary_obstruction(L)
    for p in K.components:
        assert p.is_zero() or (p.is_homogeneous() and p.degree() == 2)


def test_kuranishi_with_differential():
    L = weighted_six()
    K, split = kuranishi(L, 4)
    u, v = (Polynomial.var(("u", "v"), n) for n in ("u", "v"))
    assert K.coordinates == ("u", "v") and K.targets == ("k",)
    assert K.components == (-(u**3) - u * u * v,)
    A = ArtinRing(K.coordinates, 4)
    res = mc_residual(L, A, K.solution)
    for p in res.values():
        assert in_truncated_ideal(p, list(K.components), 4)
    # the primary obstruction misses the cubic term entirely
    assert all(p.is_zero() for p in primary_obstruction(L))


def test_kuranishi_components_start_at_order_two():
    for L in (weighted_six(), sl2_ext2(), build_Q(2, build_nonabelian2())):
        K, _ = kuranishi(L, 4)
        for p in K.components:
            assert p.is_zero() or p.min_degree() >= 2


def test_kuranishi_json_shape():
    K, S = kuranishi(weighted_six(), 4)
    doc = K.to_json()
    assert doc["components"] == [[[[3, 0], "-1"], [[2, 1], "-1"]]]
    assert set(S.to_json()) == {"0", "1", "2"}


def test_primary_obstruction_trivial_cases():
    assert primary_obstruction(abelian(3)) == ()
    assert primary_obstruction(build_sl(2)) == ()


def test_def_equations_abelian_zero():
    I = def_equations(tensor_with_algebra(abelian(2), build_exterior(2)))
    assert I.is_zero() and len(I.variables) == 4


def test_def_equations_Q21():
    I = def_equations(build_Q(2, build_sl(2)))
    assert len(I.variables) == 10
    assert len(I.generators) == 5
    assert len(I.nonzero_generators()) == 3


@pytest.mark.parametrize("L", [weighted_six(), sl2_ext2()], ids=["six", "sl2"])
def test_def_equations_match_numeric_residual(L):
    I = def_equations(L)
    A = truncated_line(3)
    t = A.gen("t")
    point = {name: Fraction(k + 2, k + 1) * (-1) ** k for k, name in enumerate(I.variables)}
    x = MCElement.from_names(L, A, {n: t.scale(c) for n, c in point.items()})
    res = mc_residual(L, A, x)
    subs = {n: t.scale(c) for n, c in point.items()}
    for g, poly in zip(L.in_degree(2), I.generators):
        expected = poly.substitute(subs, A.variables) if poly else A.zero()
        assert res.get(g, A.zero()) == A.reduce(expected)


@pytest.mark.parametrize("L", [weighted_six(), sl2_ext2(), build_Q(2, build_nonabelian2())], ids=["six", "sl2", "aff"])
def test_first_order_solutions_mod_gauge_are_h1(L):
    # over Q[eps]/eps^2: solutions are Z^1 (x) eps, gauge moves them by B^1 (x) eps
    from defkit.core import rank_and_kernel

    I = def_equations(L)
    lin = [[p.homogeneous_part(1).diff(v).constant_term() for v in I.variables] for p in I.generators]
    n1 = len(I.variables)
    z = n1 - (rank_and_kernel(lin, ncols=n1)[0] if lin else 0)
    A = dual_numbers()
    eps = A.gen("eps")
    moves = []
    for a in L.in_degree(0):
        y = gauge_transform(L, A, {a: eps}, MCElement(L, A, {}))
        moves.append([y.value.get(g, A.zero()).diff("eps").constant_term() for g in L.in_degree(1)])
    b = rank_and_kernel(moves, ncols=n1)[0] if moves else 0
    assert z - b == cohomology(L, 1).dimension


def test_prorepresentable_formal():
    assert prorepresentable_formal(tensor_with_algebra(abelian(3), build_exterior(2)))
    assert not prorepresentable_formal(build_Q(2, build_sl(2)))
    assert not prorepresentable_formal(tensor_with_algebra(build_nonabelian2(), build_exterior(2)))
    with pytest.raises(ValueError):
        prorepresentable_formal(weighted_six())
