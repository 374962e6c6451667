"""Maurer-Cartan calculus for finite-dimensional DGLAs.

Elements of L (x) m are "ring-valued vectors": ``{basis index: Polynomial}``
where every polynomial lives in the variables of an :class:`ArtinRing`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core.linalg import axpy, complement_in, greedy_extension, sparse_inverse
from .core.poly import Polynomial, PolyIdeal, monomials
from .core.rational import format_rational
from .graded import DGLA, boundaries, cocycles

RingVector = dict[int, Polynomial]


@dataclass(frozen=True)
class ArtinRing:
    """Q[variables] / (m^(order+1) + monomial relations)."""

    variables: tuple[str, ...]
    order: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        if self.order < 1:
            raise ValueError("truncation order must be at least 1")
        for r in self.relations:
            if len(r) != len(self.variables):
                raise ValueError("relation exponent has the wrong length")

    def _killed(self, e: tuple[int, ...]) -> bool:
        if sum(e) > self.order:
            return True
        return any(all(a >= b for a, b in zip(e, r)) for r in self.relations)

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.variables != self.variables:
            raise ValueError("element is not in this ring")
        if not self.relations:
            return p.truncate(self.order)
        return Polynomial(self.variables, {e: c for e, c in p.terms.items() if not self._killed(e)})

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return self.reduce(a.mul(b, self.order))

    def gen(self, name: str) -> Polynomial:
        return self.reduce(Polynomial.var(self.variables, name))

    def const(self, c) -> Polynomial:
        return Polynomial.constant(self.variables, c)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.variables)

    def in_maximal_ideal(self, p: Polynomial) -> bool:
        return p.constant_term() == 0

    def basis_monomials(self) -> list[tuple[int, ...]]:
        n = len(self.variables)
        return [e for d in range(self.order + 1) for e in monomials(n, d) if not self._killed(e)]


def dual_numbers() -> ArtinRing:
    return ArtinRing(("eps",), 1)


def truncated_line(k: int, name: str = "t") -> ArtinRing:
    """Q[t]/t^k."""
    return ArtinRing((name,), k - 1)


# ---------------------------------------------------------------------------
# ring-valued vector arithmetic


def _rv_add(acc: RingVector, v: Mapping[int, Polynomial], scale=1) -> None:
    for i, p in v.items():
        q = acc.get(i)
        q = p.scale(scale) if q is None else q + p.scale(scale)
        if q:
            acc[i] = q
        else:
            acc.pop(i, None)


def _rv_clean(v: Mapping[int, Polynomial]) -> RingVector:
    return {i: p for i, p in v.items() if p}


def rv_bracket(L: DGLA, A: ArtinRing, u: Mapping[int, Polynomial], v: Mapping[int, Polynomial]) -> RingVector:
    """[u, v] in L (x) A; A sits in degree 0 so no extra signs arise."""
    out: dict[int, Polynomial] = {}
    ad = L.ad_table()
    for i, a in u.items():
        row = ad.get(i)
        if not row:
            continue
        for j, b in v.items():
            w = row.get(j)
            if not w:
                continue
            ab = A.mul(a, b)
            if not ab:
                continue
            for k, c in w.items():
                t = ab.scale(c)
                out[k] = out[k] + t if k in out else t
    return _rv_clean(out)


def rv_d(L: DGLA, u: Mapping[int, Polynomial]) -> RingVector:
    out: dict[int, Polynomial] = {}
    for i, a in u.items():
        for k, c in L.differential.get(i, {}).items():
            t = a.scale(c)
            out[k] = out[k] + t if k in out else t
    return _rv_clean(out)


def rv_linear(u: Mapping[int, Polynomial], images: Mapping[int, Mapping[int, Fraction]]) -> RingVector:
    """Apply a Q-linear map given by basis images to a ring-valued vector."""
    out: dict[int, Polynomial] = {}
    for i, a in u.items():
        for k, c in images.get(i, {}).items():
            t = a.scale(c)
            out[k] = out[k] + t if k in out else t
    return _rv_clean(out)


@dataclass
class MCElement:
    """Candidate Maurer-Cartan element: a degree-1 vector with coefficients in m."""

    ambient: DGLA
    base: ArtinRing
    value: RingVector

    def __post_init__(self):
        deg = self.ambient.basis.degrees
        clean = {}
        for i, p in self.value.items():
            if deg[i] != 1:
                raise ValueError(f"{self.ambient.names[i]} is not in degree 1")
            p = self.base.reduce(p)
            if not self.base.in_maximal_ideal(p):
                raise ValueError(f"coefficient of {self.ambient.names[i]} is not in the maximal ideal")
            if p:
                clean[i] = p
        self.value = clean

    @classmethod
    def from_names(cls, L: DGLA, A: ArtinRing, coeffs: Mapping[str, Polynomial]) -> "MCElement":
        return cls(L, A, {L.basis.index(n): p for n, p in coeffs.items()})

    def describe(self) -> dict[str, str]:
        return {self.ambient.names[i]: repr(p) for i, p in sorted(self.value.items())}


def mc_residual(L: DGLA, A: ArtinRing, x: MCElement | Mapping[int, Polynomial]) -> RingVector:
    """dx + 1/2 [x, x] in L^2 (x) m."""
    value = x.value if isinstance(x, MCElement) else x
    deg = L.basis.degrees
    if any(deg[i] != 1 for i in value):
        raise ValueError("Maurer-Cartan residual needs a degree-1 element")
    out = rv_d(L, value)
    _rv_add(out, rv_bracket(L, A, value, value), Fraction(1, 2))
    return _rv_clean({i: A.reduce(p) for i, p in out.items()})


def gauge_transform(L: DGLA, A: ArtinRing, a: Mapping[int, Polynomial], x: MCElement) -> MCElement:
    """exp(a) * x = exp(ad_a) x - ((exp(ad_a) - 1)/ad_a)(da).

    Both series terminate because every application of ad_a raises the
    m-adic order.
    """
    deg = L.basis.degrees
    a = {i: A.reduce(p) for i, p in a.items() if p}
    for i, p in a.items():
        if deg[i] != 0:
            raise ValueError("gauge parameter must lie in degree 0")
        if not A.in_maximal_ideal(p):
            raise ValueError("gauge parameter must have coefficients in m")

    result: RingVector = {}
    term: RingVector = dict(x.value)
    k = 0
    while term:
        _rv_add(result, term, Fraction(1, math.factorial(k)))
        k += 1
        term = rv_bracket(L, A, a, term)

    term = rv_d(L, a)
    k = 0
    while term:
        _rv_add(result, term, Fraction(-1, math.factorial(k + 1)))
        k += 1
        term = rv_bracket(L, A, a, term)
    return MCElement(L, A, result)


# ---------------------------------------------------------------------------
# splittings and the Kuranishi map


def _local(v, pos):
    return {pos[k]: c for k, c in v.items()}


def _embed(v, idx):
    return {idx[k]: c for k, c in v.items()}


@dataclass
class DegreeSplitting:
    degree: int
    boundaries: list[dict[int, Fraction]]
    harmonic: list[dict[int, Fraction]]
    coexact: list[dict[int, Fraction]]


@dataclass
class SplittingData:
    """L^i = B^i (+) H^i (+) C^i with d: C^i -> B^{i+1} invertible.

    B^i is the RREF basis of im d, H^i extends it greedily by RREF cocycles,
    C^i is spanned by the standard vectors at the non-pivot columns of the
    cocycle RREF.
    """

    L: DGLA
    degrees: dict[int, DegreeSplitting]
    homotopy: dict[int, dict[int, Fraction]] = field(default_factory=dict)
    # basis index -> {position in its degree's harmonic basis: coefficient}
    harmonic_coords: dict[int, dict[int, Fraction]] = field(default_factory=dict)

    def harmonic_basis(self, i: int) -> list[dict[int, Fraction]]:
        s = self.degrees.get(i)
        return s.harmonic if s else []

    def coordinate_names(self, i: int) -> list[str]:
        """Name of the leading basis element of each harmonic representative."""
        return [self.L.names[min(v)] for v in self.harmonic_basis(i)]

    def project_harmonic(self, i: int, v: Mapping[int, Polynomial]) -> list[Polynomial | None]:
        """Coordinates in H^i of the harmonic component (None marks zero)."""
        deg = self.L.basis.degrees
        out = rv_linear({g: p for g, p in v.items() if deg[g] == i}, self.harmonic_coords)
        return [out.get(k) for k in range(len(self.harmonic_basis(i)))]

    def to_json(self) -> dict:
        def vec(v):
            return {self.L.names[k]: format_rational(c) for k, c in sorted(v.items())}

        return {
            str(i): {
                "boundaries": [vec(v) for v in s.boundaries],
                "harmonic": [vec(v) for v in s.harmonic],
                "coexact": [vec(v) for v in s.coexact],
            }
            for i, s in sorted(self.degrees.items())
        }


def splitting(L: DGLA) -> SplittingData:
    data = SplittingData(L, {})
    top = L.basis.max_degree
    for i in range(top + 1):
        idx = L.in_degree(i)
        pos = {g: k for k, g in enumerate(idx)}
        b = boundaries(L, i)
        z = cocycles(L, i)
        h = [_embed(r, idx) for r in greedy_extension([_local(v, pos) for v in b], [_local(v, pos) for v in z])]
        c = [{idx[k]: Fraction(1)} for k in complement_in([_local(v, pos) for v in z], len(idx))]
        data.degrees[i] = DegreeSplitting(i, b, h, c)

    # Coordinates with respect to the full basis B (+) H (+) C of each degree:
    # row k of the inverse expresses basis element idx[k] in that basis.
    for i, s in data.degrees.items():
        idx = L.in_degree(i)
        if not idx:
            continue
        pos = {g: k for k, g in enumerate(idx)}
        full = s.boundaries + s.harmonic + s.coexact
        inv = sparse_inverse([_local(v, pos) for v in full], len(idx))
        nb, nh = len(s.boundaries), len(s.harmonic)
        prev = data.degrees.get(i - 1)
        dinv = None
        if prev and prev.coexact:
            # d restricted to C^{i-1} in boundary coordinates, then inverted
            dc = []
            for cvec in prev.coexact:
                coords: dict[int, Fraction] = {}
                for g, c in L.d(cvec).items():
                    axpy(coords, c, inv[pos[g]])
                dc.append({r: c for r, c in coords.items() if r < nb})
            dinv = sparse_inverse(dc, nb)
        for k, g in enumerate(idx):
            coords = inv[k]
            hc = {r - nb: c for r, c in coords.items() if nb <= r < nb + nh}
            if hc:
                data.harmonic_coords[g] = hc
            if dinv is not None:
                gamma: dict[int, Fraction] = {}
                for r, c in coords.items():
                    if r < nb:
                        axpy(gamma, c, dinv[r])
                img: dict[int, Fraction] = {}
                for t, c in gamma.items():
                    axpy(img, c, prev.coexact[t])
                if img:
                    data.homotopy[g] = img
    return data


@dataclass
class KuranishiMap:
    coordinates: tuple[str, ...]
    targets: tuple[str, ...]
    components: tuple[Polynomial, ...]
    order: int
    solution: RingVector = field(default_factory=dict, repr=False)

    def ideal(self) -> PolyIdeal:
        return PolyIdeal(self.coordinates, self.components)

    def to_json(self) -> dict:
        return {
            "coordinates": list(self.coordinates),
            "targets": list(self.targets),
            "order": self.order,
            "components": [p.to_json() for p in self.components],
        }


def _h1_generic(L: DGLA, split: SplittingData, ring: ArtinRing) -> RingVector:
    x: RingVector = {}
    for name, rep in zip(ring.variables, split.harmonic_basis(1)):
        t = ring.gen(name)
        for k, c in rep.items():
            x[k] = x[k] + t.scale(c) if k in x else t.scale(c)
    return _rv_clean(x)


def kuranishi(L: DGLA, order: int) -> tuple[KuranishiMap, SplittingData]:
    """Kuranishi map H^1 -> H^2 to the given order, by homotopy transfer.

    x_1 is the generic harmonic degree-1 element in formal coordinates and
    x <- x_1 - 1/2 h[x, x] is iterated until it stabilises modulo terms of
    order > ``order``; the map is the harmonic projection of 1/2 [x, x].
    """
    if order < 2:
        raise ValueError("Kuranishi order must be at least 2")
    split = splitting(L)
    coords = tuple(split.coordinate_names(1))
    targets = tuple(split.coordinate_names(2))
    ring = ArtinRing(coords, order) if coords else None
    if ring is None:
        return KuranishiMap((), targets, tuple(Polynomial.zero(()) for _ in targets), order), split

    x1 = _h1_generic(L, split, ring)
    x = dict(x1)
    # each pass fixes one more order, so order + 1 passes always suffice
    for _ in range(order + 1):
        corr = rv_linear(rv_bracket(L, ring, x, x), split.homotopy)
        new = dict(x1)
        _rv_add(new, corr, Fraction(-1, 2))
        if new == x:
            break
        x = new
    half = rv_bracket(L, ring, x, x)
    half = {k: p.scale(Fraction(1, 2)) for k, p in half.items()}
    comps = tuple(p if p is not None else ring.zero() for p in split.project_harmonic(2, half))
    return KuranishiMap(coords, targets, comps, order, x), split


def primary_obstruction(L: DGLA) -> tuple[Polynomial, ...]:
    """Harmonic projection of 1/2 [theta, theta] for theta generic in H^1."""
    split = splitting(L)
    coords = tuple(split.coordinate_names(1))
    n2 = len(split.harmonic_basis(2))
    if not coords:
        return tuple(Polynomial.zero(()) for _ in range(n2))
    ring = ArtinRing(coords, 2)
    theta = _h1_generic(L, split, ring)
    half = {k: p.scale(Fraction(1, 2)) for k, p in rv_bracket(L, ring, theta, theta).items()}
    return tuple(p if p is not None else ring.zero() for p in split.project_harmonic(2, half))


def def_equations(L: DGLA) -> PolyIdeal:
    """Coordinates of dx + 1/2 [x, x] for x generic in L^1.

    One variable per degree-1 basis element and one generator per degree-2
    basis element (zero generators are kept in place).
    """
    idx1, idx2 = L.in_degree(1), L.in_degree(2)
    variables = tuple(L.names[g] for g in idx1)
    if not variables:
        return PolyIdeal((), [Polynomial.zero(()) for _ in idx2])
    ring = ArtinRing(variables, 2)
    x = {g: ring.gen(L.names[g]) for g in idx1}
    res = mc_residual(L, ring, x)
    return PolyIdeal(variables, [res.get(g, ring.zero()) for g in idx2])


def prorepresentable_formal(L: DGLA) -> bool:
    """For zero-differential L: the gauge action is trivial iff [L^0, L^1] = 0."""
    if not L.has_zero_differential():
        raise ValueError("criterion only applies to DGLAs with zero differential")
    deg = L.basis.degrees
    return not any(deg[i] == 0 and deg[j] == 1 for i, j in L.bracket_table)
