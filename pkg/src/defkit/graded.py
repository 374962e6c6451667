"""Finite-dimensional graded algebras and differential graded Lie algebras.

Elements are sparse vectors ``{basis index: Fraction}``.  Structure maps are
stored as sparse tables keyed by basis indices; a DGLA keeps both
orientations of every bracket so that lookups never need sign bookkeeping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core.linalg import RowSpace, SparseRow, axpy, complement_in, greedy_extension
from .core.rational import format_rational, parse_rational, to_rational

Vector = dict[int, Fraction]


def _clean(v: Mapping[int, object]) -> Vector:
    return {i: Fraction(c) for i, c in v.items() if c}


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class GradedBasis:
    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            dup = [n for n in self.names if self.names.count(n) > 1][0]
            raise ValueError(f"duplicate basis name {dup!r}")
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be nonnegative")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, int]]) -> "GradedBasis":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(int(p[1]) for p in pairs))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def in_degree(self, i: int) -> list[int]:
        return [k for k, d in enumerate(self.degrees) if d == i]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=-1)

    def dims(self) -> tuple[int, ...]:
        return tuple(len(self.in_degree(i)) for i in range(self.max_degree + 1))


# ---------------------------------------------------------------------------
# graded commutative algebras


class GCAlgebra:
    """Finite-dimensional graded commutative algebra with a unit."""

    def __init__(self, basis: GradedBasis, unit: int, product: Mapping[tuple[int, int], Mapping[int, object]]):
        self.basis = basis
        self.unit = unit
        self.product = {k: _clean(v) for k, v in product.items() if _clean(v)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, i: int, j: int) -> Vector:
        return self.product.get((i, j), {})

    def check(self) -> list[str]:
        """Violated identities (unit, degree, graded commutativity, associativity)."""
        problems = []
        deg = self.basis.degrees
        names = self.basis.names
        n = self.dim
        if deg[self.unit] != 0:
            problems.append("unit is not in degree 0")
        for i in range(n):
            if self.mul(self.unit, i) != {i: 1} or self.mul(i, self.unit) != {i: 1}:
                problems.append(f"unit law fails on {names[i]}")
        for (i, j), v in self.product.items():
            if any(deg[k] != deg[i] + deg[j] for k in v):
                problems.append(f"product {names[i]}*{names[j]} has wrong degree")
        for i in range(n):
            for j in range(n):
                s = _sign(deg[i] * deg[j])
                if self.mul(i, j) != {k: s * c for k, c in self.mul(j, i).items()}:
                    problems.append(f"graded commutativity fails on ({names[i]}, {names[j]})")
        for i, j, k in itertools.product(range(n), repeat=3):
            left: Vector = {}
            for a, c in self.mul(i, j).items():
                axpy(left, c, self.mul(a, k))
            right: Vector = {}
            for b, c in self.mul(j, k).items():
                axpy(right, c, self.mul(i, b))
            if left != right:
                problems.append(f"associativity fails on ({names[i]}, {names[j]}, {names[k]})")
        return problems


def _merge_sign(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    inversions = sum(1 for a in s for b in t if a > b)
    return _sign(inversions)


def _wedge_name(subset: tuple[int, ...], prefix: str) -> str:
    if not subset:
        return "1"
    return "^".join(f"{prefix}{k + 1}" for k in subset)


def build_exterior(q: int, max_degree: int | None = None, prefix: str = "b") -> GCAlgebra:
    """Exterior algebra on q generators of degree 1 (a q-torus's B algebra).

    ``max_degree`` truncates the algebra to degrees <= max_degree (the
    quotient by the ideal of higher wedge powers).
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    top = q if max_degree is None else min(q, max_degree)
    subsets = [s for k in range(top + 1) for s in itertools.combinations(range(q), k)]
    index = {s: i for i, s in enumerate(subsets)}
    basis = GradedBasis(tuple(_wedge_name(s, prefix) for s in subsets), tuple(len(s) for s in subsets))
    product = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t) or len(s) + len(t) > top:
                continue
            u = tuple(sorted(s + t))
            product[(index[s], index[t])] = {index[u]: _merge_sign(s, t)}
    return GCAlgebra(basis, 0, product)


def unit_algebra() -> GCAlgebra:
    return build_exterior(0)


# ---------------------------------------------------------------------------
# DGLAs


class DGLA:
    """Differential graded Lie algebra given by sparse structure constants.

    ``bracket`` maps index pairs to sparse vectors.  With ``complete=True``
    any pair whose reverse orientation is absent is filled in by graded
    antisymmetry, so callers may supply one orientation per pair.
    """

    def __init__(
        self,
        basis: GradedBasis,
        bracket: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        differential: Mapping[int, Mapping[int, object]] | None = None,
        complete: bool = True,
    ):
        self.basis = basis
        br: dict[tuple[int, int], Vector] = {}
        for k, v in (bracket or {}).items():
            v = _clean(v)
            if v:
                br[(int(k[0]), int(k[1]))] = v
        if complete:
            deg = basis.degrees
            for (i, j), v in list(br.items()):
                if (j, i) not in br and i != j:
                    s = -_sign(deg[i] * deg[j])
                    br[(j, i)] = {k: s * c for k, c in v.items()}
        self.bracket_table = br
        self.differential = {int(i): _clean(v) for i, v in (differential or {}).items() if _clean(v)}
        self._ad = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> tuple[str, ...]:
        return self.basis.names

    def dims(self) -> tuple[int, ...]:
        return self.basis.dims()

    def in_degree(self, i: int) -> list[int]:
        return self.basis.in_degree(i)

    def has_zero_differential(self) -> bool:
        return not self.differential

    def is_abelian(self) -> bool:
        return not self.bracket_table

    def ad_table(self) -> dict[int, dict[int, Vector]]:
        """``ad[i][j] = [e_i, e_j]`` for nonzero brackets only."""
        if self._ad is None:
            ad: dict[int, dict[int, Vector]] = {}
            for (i, j), v in self.bracket_table.items():
                ad.setdefault(i, {})[j] = v
            self._ad = ad
        return self._ad

    def br(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        ad = self.ad_table()
        for i, a in u.items():
            row = ad.get(i)
            if not row:
                continue
            for j, b in v.items():
                w = row.get(j)
                if w:
                    axpy(out, a * b, w)
        return out

    def d(self, u: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            w = self.differential.get(i)
            if w:
                axpy(out, a, w)
        return out

    def element(self, coeffs: Mapping[str, object]) -> Vector:
        return _clean({self.basis.index(n): to_rational(c) for n, c in coeffs.items()})

    def basis_vector(self, name_or_index) -> Vector:
        i = name_or_index if isinstance(name_or_index, int) else self.basis.index(name_or_index)
        return {i: Fraction(1)}

    def describe(self, v: Mapping[int, Fraction]) -> dict[str, str]:
        return {self.names[i]: format_rational(c) for i, c in sorted(v.items())}

    def differential_rows(self, i: int) -> list[SparseRow]:
        """Images of the degree-i basis vectors, in local degree-(i+1) coordinates."""
        target = {g: k for k, g in enumerate(self.in_degree(i + 1))}
        rows = []
        for g in self.in_degree(i):
            rows.append({target[t]: c for t, c in self.differential.get(g, {}).items()})
        return rows

    def __repr__(self) -> str:
        return f"DGLA(dims={self.dims()}, brackets={len(self.bracket_table)}, d_terms={len(self.differential)})"


def lie_algebra(names: Sequence[str], bracket: Mapping[tuple[str, str], Mapping[str, object]]) -> DGLA:
    """Lie algebra (DGLA in degree 0, zero differential) from named structure constants."""
    basis = GradedBasis(tuple(names), (0,) * len(names))
    table = {
        (basis.index(a), basis.index(b)): {basis.index(k): to_rational(c) for k, c in v.items()}
        for (a, b), v in bracket.items()
    }
    return DGLA(basis, table)


def abelian(dim: int, prefix: str = "t") -> DGLA:
    return DGLA(GradedBasis(tuple(f"{prefix}{k + 1}" for k in range(dim)), (0,) * dim))


def build_nonabelian2() -> DGLA:
    """The 2-dimensional nonabelian Lie algebra [x, y] = y."""
    return lie_algebra(["x", "y"], {("x", "y"): {"y": 1}})


def build_sl(n: int) -> DGLA:
    """sl(n) with basis E_ij (i != j, row-major) followed by H_k = E_kk - E_k+1,k+1."""
    if n < 2:
        raise ValueError("sl(n) needs n >= 2")
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    names = [f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1}_{j + 1}" for i, j in offdiag] + [f"H{k + 1}" for k in range(n - 1)]
    index = {pair: k for k, pair in enumerate(offdiag)}
    h0 = len(offdiag)

    def as_matrix(b: int) -> dict[tuple[int, int], int]:
        if b < h0:
            return {offdiag[b]: 1}
        k = b - h0
        return {(k, k): 1, (k + 1, k + 1): -1}

    def decompose(m: dict[tuple[int, int], int]) -> Vector:
        out: Vector = {}
        diag = [0] * n
        for (r, c), v in m.items():
            if not v:
                continue
            if r == c:
                diag[r] += v
            else:
                out[index[(r, c)]] = Fraction(v)
        running = 0
        for k in range(n - 1):
            running += diag[k]
            if running:
                out[h0 + k] = Fraction(running)
        return out

    def commutator(a, b):
        out: dict[tuple[int, int], int] = {}
        for (r, s), x in a.items():
            for (t, u), y in b.items():
                if s == t:
                    out[(r, u)] = out.get((r, u), 0) + x * y
                if u == r:
                    out[(t, s)] = out.get((t, s), 0) - x * y
        return out

    dim = n * n - 1
    mats = [as_matrix(b) for b in range(dim)]
    table = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            v = decompose(commutator(mats[a], mats[b]))
            if v:
                table[(a, b)] = v
    return DGLA(GradedBasis(tuple(names), (0,) * dim), table)


def sl_matrix(n: int, v: Mapping[int, Fraction]) -> list[list[Fraction]]:
    """Matrix of an element of build_sl(n) given in basis coordinates."""
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    m = [[Fraction(0)] * n for _ in range(n)]
    for b, c in v.items():
        if b < len(offdiag):
            i, j = offdiag[b]
            m[i][j] += c
        else:
            k = b - len(offdiag)
            m[k][k] += c
            m[k + 1][k + 1] -= c
    return m


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class Violation:
    identity: str
    witness: tuple[str, ...]
    detail: str = ""

    def to_json(self) -> dict:
        return {"identity": self.identity, "witness": list(self.witness), "detail": self.detail}


def check_axioms(L: DGLA) -> list[Violation]:
    """Exhaustively check degrees, antisymmetry, Jacobi, d^2 = 0 and Leibniz.

    Elements with no nonzero bracket in either slot cannot witness a Jacobi
    failure, so triples are drawn from the remaining ones; given
    antisymmetry the Jacobiator is graded-symmetric up to sign, so only
    sorted triples are evaluated.
    """
    out: list[Violation] = []
    deg = L.basis.degrees
    names = L.names
    n = L.dim

    for (i, j), v in L.bracket_table.items():
        bad = [k for k in v if deg[k] != deg[i] + deg[j]]
        if bad:
            out.append(Violation("degree", (names[i], names[j]), f"bracket lands in degree {deg[bad[0]]}"))
    for i, v in L.differential.items():
        bad = [k for k in v if deg[k] != deg[i] + 1]
        if bad:
            out.append(Violation("degree", (names[i],), "differential does not raise degree by one"))

    antisym_ok = True
    pairs = set(L.bracket_table) | {(j, i) for i, j in L.bracket_table}
    for i, j in sorted(pairs):
        if i > j:
            continue
        a = L.bracket_table.get((i, j), {})
        b = L.bracket_table.get((j, i), {})
        s = -_sign(deg[i] * deg[j])
        if a != {k: s * c for k, c in b.items()}:
            antisym_ok = False
            out.append(Violation("antisymmetry", (names[i], names[j])))

    active = sorted({i for i, _ in L.bracket_table} | {j for _, j in L.bracket_table})
    top = L.basis.max_degree
    if antisym_ok:
        triples = itertools.combinations_with_replacement(active, 3)
    else:
        triples = itertools.product(active, repeat=3)
    for i, j, k in triples:
        if deg[i] + deg[j] + deg[k] > top:
            continue
        x, y, z = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
        lhs = L.br(x, L.br(y, z))
        rhs = L.br(L.br(x, y), z)
        axpy(rhs, _sign(deg[i] * deg[j]), L.br(y, L.br(x, z)))
        if lhs != rhs:
            out.append(Violation("jacobi", (names[i], names[j], names[k])))

    for i in range(n):
        if L.d(L.d({i: Fraction(1)})):
            out.append(Violation("d_squared", (names[i],)))

    if L.differential:
        for i in range(n):
            for j in range(n):
                x, y = {i: Fraction(1)}, {j: Fraction(1)}
                lhs = L.d(L.br(x, y))
                rhs = L.br(L.d(x), y)
                axpy(rhs, _sign(deg[i]), L.br(x, L.d(y)))
                if lhs != rhs:
                    out.append(Violation("leibniz", (names[i], names[j])))
    return out


# ---------------------------------------------------------------------------
# cohomology


def _embed(local: SparseRow, idx: Sequence[int]) -> Vector:
    return {idx[k]: c for k, c in local.items()}


def _local(v: Mapping[int, Fraction], pos: Mapping[int, int]) -> SparseRow:
    return {pos[k]: c for k, c in v.items()}


def cocycles(L: DGLA, i: int) -> list[Vector]:
    """RREF basis of ker(d: L^i -> L^{i+1}) as global vectors."""
    from .core.linalg import kernel_from_space

    idx = L.in_degree(i)
    rows = L.differential_rows(i)
    # kernel of the map v -> v . D where D has the image rows; transpose to
    # columns so that RowSpace sees the matrix acting on coordinate vectors.
    ncols = len(idx)
    tgt = len(L.in_degree(i + 1))
    cols = [{k: r[t] for k, r in enumerate(rows) if t in r} for t in range(tgt)]
    space = RowSpace(cols)
    kernel = kernel_from_space(space, ncols)
    zspace = RowSpace({k: c for k, c in enumerate(v) if c} for v in kernel)
    return [_embed(r, idx) for r in zspace.basis()]


def boundaries(L: DGLA, i: int) -> list[Vector]:
    """RREF basis of im(d: L^{i-1} -> L^i) as global vectors."""
    idx = L.in_degree(i)
    if i <= 0:
        return []
    space = RowSpace(L.differential_rows(i - 1))
    return [_embed(r, idx) for r in space.basis()]


@dataclass
class CohomologyGroup:
    degree: int
    dimension: int
    representatives: list[Vector]
    boundaries: list[Vector]

    def to_json(self, L: DGLA) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "representatives": [L.describe(v) for v in self.representatives],
            "boundaries": [L.describe(v) for v in self.boundaries],
        }


def cohomology(L: DGLA, i: int) -> CohomologyGroup:
    """H^i with representatives chosen greedily from the RREF cocycle basis."""
    idx = L.in_degree(i)
    pos = {g: k for k, g in enumerate(idx)}
    z = cocycles(L, i)
    b = boundaries(L, i)
    reps = greedy_extension([_local(v, pos) for v in b], [_local(v, pos) for v in z])
    reps = [_embed(r, idx) for r in reps]
    return CohomologyGroup(i, len(z) - len(b), reps, b)


# ---------------------------------------------------------------------------
# constructions


def tensor_with_algebra(L: DGLA, B: GCAlgebra, max_degree: int | None = None) -> DGLA:
    """L (x) B with d(x(x)b) = dx(x)b and [x(x)b, y(x)c] = (-1)^{|b||y|} [x,y](x)(b c).

    Basis pairs are ordered by total degree, then B index, then L index.
    ``max_degree`` drops everything above that total degree (a quotient by
    an ideal, so the result is still a DGLA).
    """
    ldeg, bdeg = L.basis.degrees, B.basis.degrees
    pairs = [
        (x, b)
        for b in range(B.dim)
        for x in range(L.dim)
        if max_degree is None or ldeg[x] + bdeg[b] <= max_degree
    ]
    pairs.sort(key=lambda p: (ldeg[p[0]] + bdeg[p[1]], p[1], p[0]))
    index = {p: k for k, p in enumerate(pairs)}
    basis = GradedBasis(
        tuple(f"{L.names[x]}|{B.basis.names[b]}" for x, b in pairs),
        tuple(ldeg[x] + bdeg[b] for x, b in pairs),
    )
    by_b: dict[int, list[int]] = {}
    for x, b in pairs:
        by_b.setdefault(b, []).append(x)

    differential = {}
    for (x, b), k in index.items():
        dx = L.differential.get(x)
        if dx:
            img = {index[(y, b)]: c for y, c in dx.items() if (y, b) in index}
            if img:
                differential[k] = img

    bracket: dict[tuple[int, int], Vector] = {}
    for (x, y), v in L.bracket_table.items():
        for (b, c), w in B.product.items():
            if (x, b) not in index or (y, c) not in index:
                continue
            s = _sign(bdeg[b] * ldeg[y])
            img: Vector = {}
            for z, cz in v.items():
                for e, ce in w.items():
                    key = (z, e)
                    if key in index:
                        img[index[key]] = img.get(index[key], 0) + s * cz * ce
            img = _clean(img)
            if img:
                bracket[(index[(x, b)], index[(y, c)])] = img
    return DGLA(basis, bracket, differential, complete=False)


def direct_sum(L: DGLA, M: DGLA, prefixes: tuple[str, str] = ("", "")) -> DGLA:
    """L (+) M with zero cross brackets; L's basis first, then M's."""
    names = tuple(prefixes[0] + n for n in L.names) + tuple(prefixes[1] + n for n in M.names)
    basis = GradedBasis(names, L.basis.degrees + M.basis.degrees)
    off = L.dim
    bracket = dict(L.bracket_table)
    for (i, j), v in M.bracket_table.items():
        bracket[(i + off, j + off)] = {k + off: c for k, c in v.items()}
    differential = dict(L.differential)
    for i, v in M.differential.items():
        differential[i + off] = {k + off: c for k, c in v.items()}
    return DGLA(basis, bracket, differential, complete=False)


class NotAnIdeal(ValueError):
    def __init__(self, message: str, witness: tuple[str, ...]):
        super().__init__(message)
        self.witness = witness


def _homogeneous_parts(L: DGLA, vectors: Iterable[Mapping[int, object]]) -> dict[int, RowSpace]:
    spaces: dict[int, RowSpace] = {}
    deg = L.basis.degrees
    for v in vectors:
        v = _clean(v)
        for d in {deg[k] for k in v}:
            idx = L.in_degree(d)
            pos = {g: k for k, g in enumerate(idx)}
            spaces.setdefault(d, RowSpace()).add({pos[k]: c for k, c in v.items() if deg[k] == d})
    return spaces


def _ideal_check(L: DGLA, spaces: dict[int, RowSpace]) -> None:
    deg = L.basis.degrees

    def inside(v: Vector) -> bool:
        for d in {deg[k] for k in v}:
            pos = {g: k for k, g in enumerate(L.in_degree(d))}
            part = {pos[k]: c for k, c in v.items() if deg[k] == d}
            if d not in spaces or not spaces[d].contains(part):
                return False
        return True

    for d, space in sorted(spaces.items()):
        idx = L.in_degree(d)
        for row in space.basis():
            s = _embed(row, idx)
            ds = L.d(s)
            if ds and not inside(ds):
                raise NotAnIdeal("subspace is not closed under d", ("d", L.names[min(s)]))
            for x in range(L.dim):
                w = L.br({x: Fraction(1)}, s)
                if w and not inside(w):
                    raise NotAnIdeal(
                        f"[{L.names[x]}, s] leaves the subspace",
                        (L.names[x], L.names[min(s)]),
                    )


def _quotient(L: DGLA, vectors: Iterable[Mapping[int, object]]):
    spaces = _homogeneous_parts(L, vectors)
    _ideal_check(L, spaces)
    deg = L.basis.degrees
    keep: list[int] = []
    reducers: dict[int, RowSpace] = {}
    for d in range(L.basis.max_degree + 1):
        idx = L.in_degree(d)
        space = spaces.get(d, RowSpace())
        reducers[d] = space
        keep.extend(idx[k] for k in complement_in(space.basis(), len(idx)))
    keep.sort()
    newpos = {g: k for k, g in enumerate(keep)}

    def project(v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for d in sorted({deg[k] for k in v}):
            idx = L.in_degree(d)
            pos = {g: k for k, g in enumerate(idx)}
            part = reducers[d].reduce({pos[k]: c for k, c in v.items() if deg[k] == d})
            for k, c in part.items():
                out[newpos[idx[k]]] = c
        return out

    basis = GradedBasis(tuple(L.names[g] for g in keep), tuple(deg[g] for g in keep))
    bracket = {}
    for a in keep:
        for b in keep:
            v = project(L.br({a: Fraction(1)}, {b: Fraction(1)}))
            if v:
                bracket[(newpos[a], newpos[b])] = v
    differential = {}
    for a in keep:
        v = project(L.d({a: Fraction(1)}))
        if v:
            differential[newpos[a]] = v
    return DGLA(basis, bracket, differential, complete=False), project


def quotient_by_ideal(L: DGLA, vectors: Iterable[Mapping[int, object]]) -> DGLA:
    """L / S for a graded ideal S spanned by ``vectors``.

    The ideal property (closure under d and under brackets with every basis
    element) is verified first; :class:`NotAnIdeal` carries a witness pair.
    The quotient basis is the set of basis elements at non-pivot columns of
    the RREF of S in each degree.
    """
    return _quotient(L, vectors)[0]


def quotient_map(L: DGLA, vectors: Iterable[Mapping[int, object]]) -> "DGLAMorphism":
    R, project = _quotient(L, vectors)
    return DGLAMorphism.from_images(L, R, {i: project({i: Fraction(1)}) for i in range(L.dim)})


# ---------------------------------------------------------------------------
# morphisms


class DGLAMorphism:
    """Degree-0 linear map stored as one matrix block per degree.

    ``blocks[i][r][c]`` is the coefficient of the r-th degree-i target
    basis element in the image of the c-th degree-i source basis element.
    """

    def __init__(self, source: DGLA, target: DGLA, blocks: Mapping[int, Sequence[Sequence]]):
        self.source = source
        self.target = target
        top = max(source.basis.max_degree, target.basis.max_degree)
        self.blocks: dict[int, tuple[tuple[Fraction, ...], ...]] = {}
        for i in range(top + 1):
            rows = len(target.in_degree(i))
            cols = len(source.in_degree(i))
            m = blocks.get(i)
            if m is None:
                m = [[0] * cols for _ in range(rows)]
            m = tuple(tuple(to_rational(x) for x in row) for row in m)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"block in degree {i} should be {rows}x{cols}")
            self.blocks[i] = m
        self._images = None

    @classmethod
    def from_images(cls, source: DGLA, target: DGLA, images: Mapping[int, Mapping[int, Fraction]]) -> "DGLAMorphism":
        blocks = {}
        tdeg = target.basis.degrees
        for i in range(max(source.basis.max_degree, target.basis.max_degree) + 1):
            sidx, tidx = source.in_degree(i), target.in_degree(i)
            tpos = {g: k for k, g in enumerate(tidx)}
            m = [[Fraction(0)] * len(sidx) for _ in tidx]
            for c, g in enumerate(sidx):
                for t, v in images.get(g, {}).items():
                    if tdeg[t] != i:
                        raise ValueError("morphism must have degree 0")
                    m[tpos[t]][c] = Fraction(v)
            blocks[i] = m
        return cls(source, target, blocks)

    def images(self) -> dict[int, Vector]:
        if self._images is None:
            imgs: dict[int, Vector] = {}
            for i, m in self.blocks.items():
                sidx, tidx = self.source.in_degree(i), self.target.in_degree(i)
                for c, g in enumerate(sidx):
                    imgs[g] = {tidx[r]: m[r][c] for r in range(len(tidx)) if m[r][c]}
            self._images = imgs
        return self._images

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        imgs = self.images()
        out: Vector = {}
        for i, c in v.items():
            axpy(out, c, imgs.get(i, {}))
        return out

    def verify(self) -> list[Violation]:
        """Commutation with d and bracket compatibility, on all basis (pairs)."""
        out = []
        S, T = self.source, self.target
        for i in range(S.dim):
            e = {i: Fraction(1)}
            if self.apply(S.d(e)) != T.d(self.apply(e)):
                out.append(Violation("commutes_with_d", (S.names[i],)))
        imgs = [self.apply({i: Fraction(1)}) for i in range(S.dim)]
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self.apply(S.br({i: Fraction(1)}, {j: Fraction(1)}))
                rhs = T.br(imgs[i], imgs[j])
                if lhs != rhs:
                    out.append(Violation("respects_bracket", (S.names[i], S.names[j])))
        return out


def identity_morphism(L: DGLA) -> DGLAMorphism:
    return DGLAMorphism.from_images(L, L, {i: {i: Fraction(1)} for i in range(L.dim)})


def zero_morphism(L: DGLA, M: DGLA) -> DGLAMorphism:
    return DGLAMorphism.from_images(L, M, {})


def compose(g: DGLAMorphism, f: DGLAMorphism) -> DGLAMorphism:
    """g after f."""
    return DGLAMorphism.from_images(f.source, g.target, {i: g.apply(v) for i, v in f.images().items()})


def sum_inclusions(L: DGLA, M: DGLA, S: DGLA) -> tuple[DGLAMorphism, DGLAMorphism]:
    """Inclusions of L and M into S = direct_sum(L, M)."""
    off = L.dim
    return (
        DGLAMorphism.from_images(L, S, {i: {i: Fraction(1)} for i in range(L.dim)}),
        DGLAMorphism.from_images(M, S, {i: {i + off: Fraction(1)} for i in range(M.dim)}),
    )


def sum_projections(L: DGLA, M: DGLA, S: DGLA) -> tuple[DGLAMorphism, DGLAMorphism]:
    off = L.dim
    return (
        DGLAMorphism.from_images(S, L, {i: {i: Fraction(1)} for i in range(L.dim)}),
        DGLAMorphism.from_images(S, M, {i + off: {i: Fraction(1)} for i in range(M.dim)}),
    )


def induced_rank(f: DGLAMorphism, i: int) -> int:
    """Rank of H^i(f): H^i(source) -> H^i(target)."""
    reps = cohomology(f.source, i).representatives
    tidx = f.target.in_degree(i)
    pos = {g: k for k, g in enumerate(tidx)}
    space = RowSpace(_local(b, pos) for b in boundaries(f.target, i))
    base = space.rank
    for r in reps:
        space.add(_local(f.apply(r), pos))
    return space.rank - base


@dataclass(frozen=True)
class SSCriterion:
    h0_surjective: bool
    h1_bijective: bool
    h2_injective: bool

    @property
    def all(self) -> bool:
        return self.h0_surjective and self.h1_bijective and self.h2_injective

    def to_json(self) -> dict:
        return {
            "h0_surjective": self.h0_surjective,
            "h1_bijective": self.h1_bijective,
            "h2_injective": self.h2_injective,
            "all": self.all,
        }


def ss_criterion(f: DGLAMorphism) -> SSCriterion:
    """H^0 surjective, H^1 bijective, H^2 injective for a verified morphism."""
    problems = f.verify()
    if problems:
        v = problems[0]
        raise ValueError(f"not a DGLA morphism: {v.identity} fails on {v.witness}")
    dims = {i: (cohomology(f.source, i).dimension, cohomology(f.target, i).dimension) for i in (0, 1, 2)}
    ranks = {i: induced_rank(f, i) for i in (0, 1, 2)}
    return SSCriterion(
        h0_surjective=ranks[0] == dims[0][1],
        h1_bijective=ranks[1] == dims[1][0] == dims[1][1],
        h2_injective=ranks[2] == dims[2][0],
    )


# ---------------------------------------------------------------------------
# interchange format


def dgla_to_json(L: DGLA) -> dict:
    names = L.names

    def vec(v):
        return [[names[k], format_rational(c)] for k, c in sorted(v.items())]

    brackets = []
    for (i, j), v in sorted(L.bracket_table.items()):
        if i <= j or (j, i) not in L.bracket_table:
            brackets.append({"left": names[i], "right": names[j], "value": vec(v)})
    return {
        "basis": [{"name": n, "degree": d} for n, d in zip(names, L.basis.degrees)],
        "differential": [{"from": names[i], "to": vec(v)} for i, v in sorted(L.differential.items())],
        "bracket": brackets,
    }


def dgla_from_json(data: Mapping) -> DGLA:
    try:
        basis = GradedBasis.of((b["name"], b["degree"]) for b in data["basis"])
        differential: dict[int, Vector] = {}
        for entry in data.get("differential", []):
            i = basis.index(entry["from"])
            for name, c in entry["to"]:
                differential.setdefault(i, {})[basis.index(name)] = parse_rational(c)
        bracket: dict[tuple[int, int], Vector] = {}
        for entry in data.get("bracket", []):
            key = (basis.index(entry["left"]), basis.index(entry["right"]))
            if key in bracket:
                raise ValueError(f"bracket ({entry['left']}, {entry['right']}) given twice")
            bracket[key] = {basis.index(n): parse_rational(c) for n, c in entry["value"]}
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed DGLA document: {exc}") from exc
    return DGLA(basis, bracket, differential)
