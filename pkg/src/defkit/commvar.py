"""Commuting varieties C(q, g) of a Lie algebra and their ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core.linalg import RowSpace
from .core.poly import Polynomial, PolyIdeal, ideal_degree_piece, monomials, same_linear_span
from .core.rational import format_rational, to_rational
from .graded import DGLA, build_sl, direct_sum


def slot_variable(k: int, i: int) -> str:
    """Coordinate i (1-based) of tuple slot k (1-based)."""
    return f"x{k}_{i}"


def slot_variables(q: int, dim: int) -> tuple[str, ...]:
    return tuple(slot_variable(k, i) for k in range(1, q + 1) for i in range(1, dim + 1))


@dataclass
class CommVariety:
    q: int
    algebra: DGLA
    ideal: PolyIdeal

    @property
    def nvars(self) -> int:
        return len(self.ideal.variables)


def _require_lie(g: DGLA) -> None:
    if any(d != 0 for d in g.basis.degrees) or not g.has_zero_differential():
        raise ValueError("expected a Lie algebra (degree 0, zero differential)")


def commuting_ideal(q: int, g: DGLA) -> CommVariety:
    """Quadrics sum_ij c^m_ij x_{k,i} x_{l,j} for k < l and every coordinate m.

    Generators are ordered by slot pair (k, l) lexicographically, then by
    coordinate m; identically zero ones are dropped.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    _require_lie(g)
    n = g.dim
    variables = slot_variables(q, n)
    pos = {v: j for j, v in enumerate(variables)}
    gens = []
    for k in range(1, q + 1):
        for l in range(k + 1, q + 1):
            per_coord: dict[int, dict[tuple[int, ...], Fraction]] = {}
            for (i, j), v in g.bracket_table.items():
                a, b = pos[slot_variable(k, i + 1)], pos[slot_variable(l, j + 1)]
                e = [0] * len(variables)
                e[a] += 1
                e[b] += 1
                e = tuple(e)
                for m, c in v.items():
                    terms = per_coord.setdefault(m, {})
                    terms[e] = terms.get(e, 0) + c
            for m in range(n):
                p = Polynomial(variables, per_coord.get(m, {}))
                if p:
                    gens.append(p)
    return CommVariety(q, g, PolyIdeal(variables, gens))


def hilbert_function(V: CommVariety | PolyIdeal, max_degree: int, guard: int = 6) -> list[int]:
    """dim (R/I)_d for d = 0..max_degree."""
    if max_degree > guard:
        raise ValueError(f"max_degree {max_degree} exceeds the cost guard {guard}")
    ideal = V.ideal if isinstance(V, CommVariety) else V
    n = len(ideal.variables)
    out = []
    for d in range(max_degree + 1):
        total = sum(1 for _ in monomials(n, d))
        out.append(total - ideal_degree_piece(ideal, d)[0])
    return out


def tangent_dimension(V: CommVariety, point: Sequence) -> int:
    """Zariski tangent dimension at a rational point: nvars - rank(Jacobian)."""
    variables = V.ideal.variables
    if len(point) != len(variables):
        raise ValueError(f"point needs {len(variables)} coordinates")
    values = {v: to_rational(x) for v, x in zip(variables, point)}
    gens = V.ideal.nonzero_generators()
    for g in gens:
        if g.evaluate(values):
            raise ValueError("point does not lie on the variety")
    space = RowSpace()
    for g in gens:
        row = {}
        for j, v in enumerate(variables):
            c = g.diff(v).evaluate(values)
            if c:
                row[j] = c
        space.add(row)
    return len(variables) - space.rank


def point_from_slots(slots: Sequence[Mapping[int, Fraction]], dim: int) -> list[Fraction]:
    """Flatten per-slot algebra elements (sparse vectors) into variable order."""
    out = []
    for s in slots:
        out.extend(Fraction(s.get(i, 0)) for i in range(dim))
    return out


@dataclass
class BoundReport:
    q: int
    n: int
    parity: str
    bound: Fraction | None  # None: no constraint
    necessary_condition_holds: bool
    proof_inequality_holds: bool

    @property
    def agree(self) -> bool:
        return self.necessary_condition_holds == self.proof_inequality_holds

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "parity": self.parity,
            "bound": "unbounded" if self.bound is None else format_rational(self.bound),
            "necessary_condition_holds": self.necessary_condition_holds,
            "proof_inequality_holds": self.proof_inequality_holds,
            "verdicts_agree": self.agree,
            "irreducibility_excluded": not self.necessary_condition_holds,
        }


def lemma31_bound(q: int, n: int) -> BoundReport:
    """Necessary condition on q for C(q, sl(n)) to be irreducible.

    Evaluates both the closed form (3 + (8n-12)/(n-2)^2 for even n,
    3 + 8/(n-3) for odd n; no constraint where the denominator vanishes)
    and the dimension inequality
    r(n-r)(q-1) < n^2 - 1 + (n-1)(q-1) - 2r(n-r) with r = n // 2.
    """
    if n < 2 or q < 1:
        raise ValueError("need n >= 2 and q >= 1")
    if n % 2 == 0:
        parity = "even"
        bound = None if n == 2 else 3 + Fraction(8 * n - 12, (n - 2) ** 2)
    else:
        parity = "odd"
        bound = None if n == 3 else 3 + Fraction(8, n - 3)
    closed = True if bound is None else q < bound
    r = n // 2
    proof = r * (n - r) * (q - 1) < n * n - 1 + (n - 1) * (q - 1) - 2 * r * (n - r)
    return BoundReport(q, n, parity, bound, closed, proof)


def product_split_check(q: int, g: DGLA, h: DGLA) -> bool:
    """C(q, g (+) h) = C(q, g) x C(q, h) at the level of generator sets."""
    s = direct_sum(g, h, prefixes=("g.", "h."))
    whole = commuting_ideal(q, s).ideal
    left = commuting_ideal(q, g).ideal
    right = commuting_ideal(q, h).ideal
    ren_h = {slot_variable(k, i): slot_variable(k, g.dim + i) for k in range(1, q + 1) for i in range(1, h.dim + 1)}
    parts = [p.rename({}, whole.variables) for p in left.nonzero_generators()]
    parts += [p.rename(ren_h, whole.variables) for p in right.nonzero_generators()]
    return whole.normalized() == PolyIdeal(whole.variables, parts).normalized()


def minors_ideal(rows: int, cols: int, prefix: str = "m") -> PolyIdeal:
    """2x2 minors of a generic rows x cols matrix with entries m{r}{c}."""
    from itertools import combinations

    variables = tuple(f"{prefix}{r + 1}{c + 1}" for r in range(rows) for c in range(cols))

    def v(r, c):
        return Polynomial.var(variables, f"{prefix}{r + 1}{c + 1}")

    gens = []
    for r1, r2 in combinations(range(rows), 2):
        for c1, c2 in combinations(range(cols), 2):
            gens.append(v(r1, c1) * v(r2, c2) - v(r1, c2) * v(r2, c1))
    return PolyIdeal(variables, gens)


@dataclass
class DeterminantalMatch:
    coordinate_map: dict[str, dict[str, Fraction]]
    degree2_dimensions: tuple[int, int]
    hilbert_commuting: list[int]
    hilbert_determinantal: list[int]
    spans_equal: bool

    @property
    def verified(self) -> bool:
        return self.spans_equal and self.hilbert_commuting == self.hilbert_determinantal

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "coordinate_map": {
                k: {v: format_rational(c) for v, c in sorted(m.items())} for k, m in sorted(self.coordinate_map.items())
            },
            "degree2_dimensions": list(self.degree2_dimensions),
            "hilbert_commuting": self.hilbert_commuting,
            "hilbert_determinantal": self.hilbert_determinantal,
        }


def determinantal_match_sl2(max_degree: int = 4) -> DeterminantalMatch:
    """C(2, sl(2)) against the rank <= 1 locus of 2x3 matrices.

    With sl(2) in the basis (e, f, h), the bracket of two elements has
    coordinates 2(a_h b_e - a_e b_h), -2(a_h b_f - a_f b_h), a_e b_f - a_f b_e,
    i.e. multiples of the 2x2 minors of the matrix whose rows are the two
    slots.  The coordinate change m_{r,c} -> x_{r,c} is therefore the
    identity on slots; it is still applied and checked explicitly.
    """
    V = commuting_ideal(2, build_sl(2))
    D = minors_ideal(2, 3)
    cmap = {f"m{r}{c}": {slot_variable(r, c): Fraction(1)} for r in (1, 2) for c in (1, 2, 3)}
    target = V.ideal.variables
    images = {
        m: sum((Polynomial.var(target, x).scale(c) for x, c in lin.items()), Polynomial.zero(target))
        for m, lin in cmap.items()
    }
    # the map must be invertible
    rank = RowSpace(
        {target.index(x): c for x, c in lin.items()} for lin in cmap.values()
    ).rank
    if rank != len(target):
        raise RuntimeError("coordinate change is not invertible")
    moved = [g.substitute(images, target) for g in D.generators]
    dim_c, basis_c = ideal_degree_piece(V.ideal, 2)
    dim_d, basis_d = ideal_degree_piece(PolyIdeal(target, moved), 2)
    spans = same_linear_span(basis_c, basis_d)
    hc = hilbert_function(V, max_degree)
    hd = hilbert_function(D, max_degree)
    result = DeterminantalMatch(cmap, (dim_c, dim_d), hc, hd, spans)
    if not result.verified:
        raise RuntimeError("determinantal identification failed to verify")
    return result
