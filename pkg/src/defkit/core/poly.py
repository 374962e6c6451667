"""Multivariate polynomials over Q and homogeneous ideals.

Terms are keyed by dense exponent tuples.  The term order is graded
lexicographic: total degree first, then the exponent tuple compared
lexicographically, so the first variable dominates.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import RowSpace
from .rational import format_rational, parse_rational, to_rational

Exponent = tuple[int, ...]


def grlex_key(e: Exponent):
    return (sum(e), e)


def monomials(nvars: int, degree: int) -> Iterator[Exponent]:
    """All exponent vectors of a given total degree, in descending grlex order."""
    if degree < 0:
        return
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    # combinations_with_replacement yields variable multisets lexicographically,
    # which is exactly descending lex order on exponent vectors.
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        yield tuple(e)


class Polynomial:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = to_rational(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        variables = tuple(variables)
        c = to_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(name)
        e = tuple(int(j == i) for j in range(len(variables)))
        return cls._raw(variables, {e: Fraction(1)})

    def _check(self, other: "Polynomial") -> None:
        if other.variables != self.variables:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return Polynomial.zero(self.variables)
        return Polynomial._raw(self.variables, {e: c * v for e, v in self.terms.items()})

    def mul(self, other: "Polynomial", max_degree: int | None = None) -> "Polynomial":
        """Product, optionally discarding terms of total degree > max_degree."""
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        right = [(e, sum(e), c) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, d2, c2 in right:
                if max_degree is not None and d1 + d2 > max_degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.variables, out)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.variables, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, max_degree: int) -> "Polynomial":
        return Polynomial._raw(self.variables, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term()[1])

    def used_variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(self.variables[i] for i, k in enumerate(e) if k)
        return used

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        vals = [to_rational(point[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x**k
            total += t
        return total

    def diff(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.variables, out)

    def rename(self, mapping: Mapping[str, str], target: Sequence[str]) -> "Polynomial":
        """Re-embed into the ring ``target`` by renaming variables.

        Variables missing from ``mapping`` keep their name; every variable
        that actually occurs must exist in ``target``.
        """
        target = tuple(target)
        pos = {v: i for i, v in enumerate(target)}
        idx = []
        for v in self.variables:
            idx.append(pos.get(mapping.get(v, v)))
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            f = [0] * len(target)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.variables[i]!r} has no image in target ring")
                    f[idx[i]] += k
            f = tuple(f)
            v = out.get(f, 0) + c
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return Polynomial._raw(target, out)

    def substitute(self, values: Mapping[str, "Polynomial"], target: Sequence[str], max_degree: int | None = None) -> "Polynomial":
        """Replace every variable by a polynomial in the ring ``target``."""
        target = tuple(target)
        images = []
        for v in self.variables:
            p = values[v]
            if p.variables != target:
                raise ValueError("substituted values must live in the target ring")
            images.append(p)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] if k == 1 else power(i, k - 1).mul(images[i], max_degree)
            return powers[(i, k)]

        total = Polynomial.zero(target)
        for e, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t.mul(power(i, k), max_degree)
            total = total + t
        return total

    def to_json(self) -> list:
        return [[list(e), format_rational(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, variables: Sequence[str], data: Iterable) -> "Polynomial":
        return cls(variables, {tuple(e): parse_rational(c) for e, c in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            coeff = format_rational(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class PolyIdeal:
    """An ideal held as a list of generators in a common ring.

    Generators are kept exactly as supplied (zero generators included) so
    that callers can keep a one-to-one correspondence with whatever produced
    them; :meth:`nonzero_generators` filters.
    """

    def __init__(self, variables: Sequence[str], generators: Iterable[Polynomial] = ()):
        self.variables = tuple(variables)
        gens = tuple(generators)
        for g in gens:
            if g.variables != self.variables:
                raise ValueError("generator lives in a different ring")
        self.generators = gens

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def nonzero_generators(self) -> tuple[Polynomial, ...]:
        return tuple(g for g in self.generators if g)

    def is_zero(self) -> bool:
        return not self.nonzero_generators()

    def used_variables(self) -> set[str]:
        used = set()
        for g in self.generators:
            used |= g.used_variables()
        return used

    def normalized(self) -> frozenset[Polynomial]:
        """Monic nonzero generators as a set, for generator-set comparisons."""
        return frozenset(g.monic() for g in self.nonzero_generators())

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "generators": [g.to_json() for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PolyIdeal":
        vs = data["variables"]
        return cls(vs, [Polynomial.from_json(vs, g) for g in data["generators"]])

    def __repr__(self) -> str:
        return f"PolyIdeal({len(self.variables)} vars, {len(self.nonzero_generators())} generators)"


def _degree_piece_space(ideal: PolyIdeal, d: int) -> tuple[RowSpace, list[Exponent]]:
    if not ideal.homogeneous:
        raise ValueError("ideal_degree_piece needs a homogeneous ideal")
    n = len(ideal.variables)
    cols = list(monomials(n, d))
    col = {e: j for j, e in enumerate(cols)}
    space = RowSpace()
    for g in ideal.nonzero_generators():
        k = d - g.degree()
        if k < 0:
            continue
        for mu in monomials(n, k):
            row = {}
            for e, c in g.terms.items():
                row[col[tuple(a + b for a, b in zip(e, mu))]] = c
            space.add(row)
    return space, cols


def ideal_degree_piece(ideal: PolyIdeal, d: int) -> tuple[int, list[Polynomial]]:
    """Dimension and RREF basis of the degree-d component of a homogeneous ideal.

    Columns are the degree-d monomials in descending grlex order, so each
    basis polynomial's leading monomial is its pivot.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    space, cols = _degree_piece_space(ideal, d)
    basis = [Polynomial(ideal.variables, {cols[j]: c for j, c in row.items()}) for row in space.basis()]
    return space.rank, basis


def same_linear_span(a: Iterable[Polynomial], b: Iterable[Polynomial]) -> bool:
    """True iff two finite polynomial families span the same Q-vector space."""
    a, b = list(a), list(b)
    allp = a + b
    if not allp:
        return True
    variables = allp[0].variables
    monos = sorted({e for p in allp for e in p.terms}, key=grlex_key, reverse=True)
    col = {e: j for j, e in enumerate(monos)}

    def space(ps):
        return RowSpace({col[e]: c for e, c in p.terms.items()} for p in ps)

    sa, sb = space(a), space(b)
    return sa.basis() == sb.basis()


def in_truncated_ideal(p: Polynomial, generators: Sequence[Polynomial], max_degree: int) -> bool:
    """Membership of p in (generators) + m^(max_degree+1).

    Decided by linear algebra on the space of polynomials of degree at most
    ``max_degree``: p must be a Q-combination of monomial multiples of the
    generators, all truncated above ``max_degree``.
    """
    variables = p.variables
    n = len(variables)
    rows = []
    for g in generators:
        if not g:
            continue
        lo = g.min_degree()
        for k in range(0, max_degree - lo + 1):
            for mu in monomials(n, k):
                shifted = {tuple(a + b for a, b in zip(e, mu)): c for e, c in g.terms.items()}
                t = {e: c for e, c in shifted.items() if sum(e) <= max_degree}
                if t:
                    rows.append(t)
    target = p.truncate(max_degree).terms
    monos = sorted({e for r in rows for e in r} | set(target), key=grlex_key, reverse=True)
    col = {e: j for j, e in enumerate(monos)}
    space = RowSpace({col[e]: c for e, c in r.items()} for r in rows)
    return space.contains({col[e]: c for e, c in target.items()})
