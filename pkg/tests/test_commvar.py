from fractions import Fraction

import pytest
import sympy

from defkit.commvar import (
    commuting_ideal,
    determinantal_match_sl2,
    hilbert_function,
    lemma31_bound,
    minors_ideal,
    point_from_slots,
    product_split_check,
    slot_variable,
    tangent_dimension,
)
from defkit.core import PolyIdeal, Polynomial, ideal_degree_piece
from defkit.core.poly import in_truncated_ideal
from defkit.graded import abelian, build_nonabelian2, build_sl


def sympy_commuting_generators(q, n):
    """Bracket coordinates of generic sl(n) slots (n < 10), via sympy matrices."""
    g = build_sl(n)
    mats = []
    for k in range(1, q + 1):
        M = sympy.zeros(n, n)
        for i, name in enumerate(g.names, start=1):
            v = sympy.Symbol(slot_variable(k, i))
            if name.startswith("E"):
                a, b = int(name[1]), int(name[2])
                M[a - 1, b - 1] += v
            else:
                j = int(name[1:])
                M[j - 1, j - 1] += v
                M[j, j] -= v
        mats.append(M)
    out = []
    for k in range(q):
        for l in range(k + 1, q):
            C = (mats[k] * mats[l] - mats[l] * mats[k]).expand()
            coords = []
            for name in g.names:
                if name.startswith("E"):
                    a, b = int(name[1]), int(name[2])
                    coords.append(C[a - 1, b - 1])
                else:
                    j = int(name[1:])
                    coords.append(sum(C[i, i] for i in range(j)))
            out += [sympy.expand(c) for c in coords if sympy.expand(c) != 0]
    return out


def to_sympy(p: Polynomial):
    syms = [sympy.Symbol(v) for v in p.variables]
    return sympy.expand(
        sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, ex)]) for ex, c in p.terms.items())
    )


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_commuting_ideal_matches_sympy(q, n):
    V = commuting_ideal(q, build_sl(n))
    ours = [to_sympy(p) for p in V.ideal.generators]
    assert ours == sympy_commuting_generators(q, n)


def test_commuting_ideal_small_cases():
    assert commuting_ideal(1, build_sl(3)).ideal.is_zero()
    assert commuting_ideal(4, abelian(3)).ideal.is_zero()
    V = commuting_ideal(2, build_sl(2))
    assert V.nvars == 6 and len(V.ideal.generators) == 3
    assert all(p.is_homogeneous() and p.degree() == 2 for p in V.ideal.generators)
    with pytest.raises(ValueError):
        commuting_ideal(0, build_sl(2))


@pytest.mark.parametrize("q,n", [(2, 2), (3, 3), (4, 2)])
def test_generator_count_bound(q, n):
    g = build_sl(n)
    assert len(commuting_ideal(q, g).ideal.generators) <= q * (q - 1) // 2 * g.dim


@pytest.mark.parametrize("n", [2, 3])
def test_one_dimensional_subalgebra_commutes(n):
    g = build_sl(n)
    V = commuting_ideal(3, g)
    s = sympy.symbols("s1:4")
    a = [Fraction(i + 1, 2) * (-1) ** i for i in range(g.dim)]
    for p in V.ideal.generators:
        expr = to_sympy(p).subs(
            {sympy.Symbol(slot_variable(k + 1, i + 1)): s[k] * sympy.Rational(a[i].numerator, a[i].denominator)
             for k in range(3) for i in range(g.dim)}
        )
        assert sympy.expand(expr) == 0


def test_projection_consistency():
    g = build_sl(2)
    big = commuting_ideal(3, g).ideal
    small = commuting_ideal(2, g).ideal
    zero = {slot_variable(3, i): Polynomial.zero(small.variables) for i in range(1, 4)}
    keep = {v: Polynomial.var(small.variables, v) for v in small.variables}
    restricted = [p.substitute({**keep, **zero}, small.variables) for p in big.generators]
    restricted = [p for p in restricted if p]
    for p in restricted:
        assert in_truncated_ideal(p, small.generators, 2)
    for p in small.generators:
        assert in_truncated_ideal(p, restricted, 2)


def test_hilbert_examples():
    z = PolyIdeal(("x", "y"), [])
    assert hilbert_function(z, 2) == [1, 2, 3]
    assert hilbert_function(commuting_ideal(2, build_sl(2)), 2) == [1, 6, 18]
    with pytest.raises(ValueError):
        hilbert_function(z, 7)
    assert hilbert_function(z, 7, guard=8)[-1] == 8


def test_hilbert_segre_cone_formula():
    # C(q, sl(2)) is the cone over P^{q-1} x P^2: h(d) = C(d+q-1, q-1) C(d+2, 2)
    from math import comb

    for q in (2, 3):
        h = hilbert_function(commuting_ideal(q, build_sl(2)), 3)
        assert h == [comb(d + q - 1, q - 1) * comb(d + 2, 2) for d in range(4)]


def test_tangent_dimension_examples():
    g2 = build_sl(2)
    V = commuting_ideal(2, g2)
    assert tangent_dimension(V, [0] * 6) == 6
    h = g2.basis.index("H1")
    assert tangent_dimension(V, point_from_slots([{h: 1}, {}], 3)) == 4
    g3 = build_sl(3)
    V3 = commuting_ideal(2, g3)
    reg = {g3.basis.index("H1"): 1, g3.basis.index("H2"): 3}  # diag(1, 2, -3)
    assert tangent_dimension(V3, point_from_slots([reg, {}], 8)) == 10


def test_tangent_dimension_rejects_off_variety():
    g = build_sl(2)
    V = commuting_ideal(2, g)
    e, f = g.basis.index("E12"), g.basis.index("E21")
    with pytest.raises(ValueError):
        tangent_dimension(V, point_from_slots([{e: 1}, {f: 1}], 3))
    with pytest.raises(ValueError):
        tangent_dimension(V, [0] * 5)


def test_lemma31_examples():
    r = lemma31_bound(2, 4)
    assert r.bound == 8 and r.necessary_condition_holds and r.parity == "even"
    r = lemma31_bound(7, 5)
    assert r.bound == 7 and not r.necessary_condition_holds
    assert r.to_json()["bound"] == "7"
    r = lemma31_bound(100, 2)
    assert r.bound is None and r.necessary_condition_holds
    assert r.to_json()["bound"] == "unbounded"
    assert lemma31_bound(100, 3).bound is None
    with pytest.raises(ValueError):
        lemma31_bound(1, 1)


def test_lemma31_even_formula_equivalent_forms():
    # 3 + (8n-12)/(n-2)^2 = (3n^2-4n)/(n-2)^2
    for n in range(4, 40, 2):
        assert lemma31_bound(1, n).bound == Fraction(3 * n * n - 4 * n, (n - 2) ** 2)


def test_product_split():
    assert product_split_check(2, abelian(2), abelian(3))
    assert product_split_check(2, build_sl(2), abelian(3))
    assert product_split_check(2, build_sl(2), build_sl(2))
    assert product_split_check(3, build_nonabelian2(), build_sl(2))


def test_minors_ideal():
    D = minors_ideal(2, 3)
    assert len(D.generators) == 3 and ideal_degree_piece(D, 2)[0] == 3


def test_determinantal_match():
    m = determinantal_match_sl2()
    assert m.verified
    assert m.degree2_dimensions == (3, 3)
    assert m.hilbert_commuting == m.hilbert_determinantal
    assert len(m.hilbert_commuting) == 5
