"""Closed-form line bundle cohomology on tori, projective spaces and products.

A line bundle on torus_q x P^n is L(alpha, H, d) = L(alpha, H) boxtimes O(d).
Only the classifying data is modeled: alpha is an integer vector (trivial iff
zero), H is either the zero form or a nondegenerate form given by its number
of negative eigenvalues s and the pfaffian of its imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .core.linalg import RowSpace, to_sparse
from .core.rational import format_rational, to_rational


@dataclass(frozen=True)
class ZeroForm:
    def to_json(self) -> dict:
        return {"kind": "zero"}


@dataclass(frozen=True)
class Nondegenerate:
    s: int
    pfaffian: int

    def __post_init__(self):
        if self.pfaffian < 1:
            raise ValueError("pfaffian must be a positive integer")
        if self.s < 0:
            raise ValueError("number of negative eigenvalues must be >= 0")

    def to_json(self) -> dict:
        return {"kind": "nondegenerate", "s": self.s, "pfaffian": self.pfaffian}


Hermitian = ZeroForm | Nondegenerate


@dataclass(frozen=True)
class AHBundle:
    character: tuple[int, ...]
    hermitian: Hermitian = field(default_factory=ZeroForm)

    @property
    def trivial_character(self) -> bool:
        return not any(self.character)

    @classmethod
    def flat(cls, nontrivial: bool = False) -> "AHBundle":
        return cls((1,) if nontrivial else (0,), ZeroForm())

    @classmethod
    def definite(cls, s: int, pfaffian: int = 1, nontrivial: bool = False) -> "AHBundle":
        return cls((1,) if nontrivial else (0,), Nondegenerate(s, pfaffian))


CohVector = tuple[int, ...]


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def proj_cohomology(n: int, d: int) -> CohVector:
    """h^i(P^n, O(d)) for i = 0..n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    h = [0] * (n + 1)
    if d >= 0:
        h[0] = comb(n + d, n)
    if d <= -n - 1:
        h[n] = comb(-d - 1, n)
    return tuple(h)


def bott(n: int, p: int, k: int) -> CohVector:
    """h^i(P^n, Omega^p(k)) by Bott's formula."""
    if not 0 <= p <= n:
        raise ValueError("need 0 <= p <= n")
    h = [0] * (n + 1)
    if k == 0:
        h[p] = 1
    if k > p:
        h[0] = comb(k + n - p, k) * comb(k - 1, p)
    if k < p - n:
        h[n] += comb(-k + p, -k) * comb(-k - 1, n - p)
    return tuple(h)


def euler_char(h: Sequence[int]) -> int:
    return sum((-1) ** i * x for i, x in enumerate(h))


def _tangent_bott(n: int, d: int) -> CohVector:
    # T_{P^n} = Omega^{n-1}(n+1)
    return bott(n, n - 1, n + 1 + d)


@lru_cache(maxsize=None)
def proj_tangent_cohomology(n: int, d: int) -> CohVector:
    """h^i(P^n, T(d)); for n = 1 read off T = O(2) and check against Bott."""
    if n < 1:
        raise ValueError("n must be >= 1")
    h = _tangent_bott(n, d)
    if n == 1:
        direct = proj_cohomology(1, d + 2)
        if direct != h:
            raise AssertionError(f"T_P1(d) branches disagree at d={d}: {direct} vs {h}")
    euler = (n + 1) * euler_char(proj_cohomology(n, d + 1)) - euler_char(proj_cohomology(n, d))
    if euler_char(h) != euler:
        raise AssertionError(f"Euler sequence check failed for T_P{n}({d})")
    return h


def torus_cohomology(q: int, b: AHBundle) -> CohVector:
    if q < 0:
        raise ValueError("q must be >= 0")
    h = [0] * (q + 1)
    if isinstance(b.hermitian, ZeroForm):
        if b.trivial_character:
            h = [comb(q, i) for i in range(q + 1)]
        return tuple(h)
    if isinstance(b.hermitian, Nondegenerate):
        if q == 0:
            raise ValueError("a nondegenerate form needs q >= 1")
        if b.hermitian.s > q:
            raise ValueError(f"s={b.hermitian.s} out of range 0..{q}")
        h[b.hermitian.s] = b.hermitian.pfaffian
        return tuple(h)
    raise ValueError("unsupported hermitian form")


def kunneth(u: Sequence[int], v: Sequence[int]) -> CohVector:
    if not u or not v:
        raise ValueError("empty cohomology vector")
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    return tuple(out)


@lru_cache(maxsize=None)
def product_line_cohomology(q: int, n: int, b: AHBundle, d: int) -> CohVector:
    """h^i(torus_q x P^n, L(alpha, H, d))."""
    return kunneth(torus_cohomology(q, b), proj_cohomology(n, d))


@lru_cache(maxsize=None)
def product_tangent_twist_cohomology(q: int, n: int, b: AHBundle, d: int) -> CohVector:
    """h^i(T_X tensor L(alpha, H, d)) with T_X = q trivial summands + T_{P^n}."""
    line = product_line_cohomology(q, n, b, d)
    tang = kunneth(torus_cohomology(q, b), proj_tangent_cohomology(n, d))
    return tuple(q * a + t for a, t in zip(line, tang))


def lemma71_failures(q: int, n: int, b: AHBundle, d: int) -> list[str]:
    """Which of the four vanishing statements fail on torus_q x P^n (normally none)."""
    bad = []
    line = product_line_cohomology(q, n, b, d)
    tw = product_tangent_twist_cohomology(q, n, b, d)
    herm = b.hermitian
    if isinstance(herm, ZeroForm) and not b.trivial_character and any(line):
        bad.append("item1")
    if isinstance(herm, Nondegenerate):
        if herm.s == 0 and d >= -n and any(line[1:]):
            bad.append("item2")
        if herm.s == q and d <= -2 and (any(line[: q + n - 1]) or any(tw[: q + n - 1])):
            bad.append("item3")
        if herm.s == q and d <= -n - 2 and tw[q + n - 1]:
            bad.append("item4")
    return bad


def contraction_map(H: Sequence[Sequence]) -> tuple[list[list[Fraction]], bool]:
    """Matrix of dz_i (x) d/dz_j -> sum_s h_js dz_i ^ dz_s.

    Rows are indexed by (i, j) in row-major order, columns by pairs a < b of
    the basis dz_a ^ dz_b.
    """
    q = len(H)
    if q < 1 or any(len(r) != q for r in H):
        raise ValueError("H must be a nonempty square matrix")
    H = [[to_rational(x) for x in r] for r in H]
    pairs = list(combinations(range(q), 2))
    col = {p: c for c, p in enumerate(pairs)}
    rows = []
    for i in range(q):
        for j in range(q):
            row = [Fraction(0)] * len(pairs)
            for s in range(q):
                if s == i or not H[j][s]:
                    continue
                if i < s:
                    row[col[(i, s)]] += H[j][s]
                else:
                    row[col[(s, i)]] -= H[j][s]
            rows.append(row)
    rank = RowSpace(to_sparse(r) for r in rows).rank
    return rows, rank == len(pairs)


def product_alpha_iso(h0TX: int, h1OY: int, h1OX: int, h0TY: int) -> bool:
    return h0TX * h1OY == 0 and h1OX * h0TY == 0


@dataclass(frozen=True)
class DivisorSpec:
    character: tuple[int, ...]
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("divisor degree must be >= 1")

    @classmethod
    def from_json(cls, data) -> "DivisorSpec":
        try:
            ch = tuple(int(x) for x in data["character"])
            deg = data["degree"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad divisor entry {data!r}") from exc
        if not isinstance(deg, int) or isinstance(deg, bool):
            raise ValueError(f"bad divisor degree {deg!r}")
        return cls(ch, deg)


def _char_combo(divisors: Sequence[DivisorSpec], coeffs: dict[int, int]) -> tuple[int, ...]:
    width = max(len(D.character) for D in divisors)
    out = [0] * width
    for idx, c in coeffs.items():
        for k, a in enumerate(divisors[idx].character):
            out[k] += c * a
    return tuple(out)


def _scaled_form(c: int, q: int, pfaffian: int) -> Hermitian:
    if c == 0:
        return ZeroForm()
    return Nondegenerate(0 if c > 0 else q, abs(c) ** q * pfaffian)


def _divisor_label(coeffs: dict[int, int]) -> str:
    parts = []
    for idx in sorted(coeffs):
        c = coeffs[idx]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}D_{idx + 1}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else (s or "0")


@dataclass
class CostabilityReport:
    q: int
    n: int
    divisors: list[DivisorSpec]
    witnesses: list[dict]
    checked: int

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "ambient": f"torus_{self.q} x P^{self.n - 1}",
            "divisors": [{"character": list(D.character), "degree": D.degree} for D in self.divisors],
            "groups_checked": self.checked,
            "passed": self.passed,
            "witnesses": self.witnesses,
        }


def costability_check(q: int, n: int, divisors: Sequence[DivisorSpec], pfaffian: int = 1) -> CostabilityReport:
    """Vanishing hypotheses for complete intersections in X = torus_q x P^{n-1}.

    For every nonempty subset A of the divisors:
      H^{|A|+1}(T_X(-D_A)) = 0, and
      H^{|A|}(O_X(D_i - D_A)) = 0 for every i with A != {i}.
    All divisors share the positive definite class H of the given pfaffian,
    so c*H becomes Nondegenerate(s=0) for c > 0, Nondegenerate(s=q) for c < 0
    and the zero form for c = 0, with pfaffian |c|^q * P.
    """
    divisors = list(divisors)
    m = len(divisors)
    if q < 1 or n < 2:
        raise ValueError("need q >= 1 and n >= 2")
    if not 1 <= m <= q + n - 3:
        raise ValueError(f"divisor count {m} outside the window 1..{q + n - 3}")
    pn = n - 1
    witnesses = []
    checked = 0
    for size in range(1, m + 1):
        for A in combinations(range(m), size):
            coeffs = {a: -1 for a in A}
            deg = -sum(divisors[a].degree for a in A)
            b = AHBundle(_char_combo(divisors, coeffs), _scaled_form(-size, q, pfaffian))
            h = product_tangent_twist_cohomology(q, pn, b, deg)
            checked += 1
            k = size + 1
            if k < len(h) and h[k]:
                witnesses.append({
                    "condition": "tangent",
                    "subset": [a + 1 for a in A],
                    "degree": k,
                    "dimension": h[k],
                    "group": f"H{k}(T_X({_divisor_label(coeffs)})) != 0",
                })
            for i in range(m):
                if A == (i,):
                    continue
                c2 = dict(coeffs)
                c2[i] = c2.get(i, 0) + 1
                c2 = {j: c for j, c in c2.items() if c}
                herm_c = sum(c2.values())
                deg2 = sum(divisors[j].degree * c for j, c in c2.items())
                b2 = AHBundle(_char_combo(divisors, c2), _scaled_form(herm_c, q, pfaffian))
                h2 = product_line_cohomology(q, pn, b2, deg2)
                checked += 1
                if size < len(h2) and h2[size]:
                    witnesses.append({
                        "condition": "line",
                        "subset": [a + 1 for a in A],
                        "index": i + 1,
                        "degree": size,
                        "dimension": h2[size],
                        "group": f"H{size}(O_X({_divisor_label(c2)})) != 0",
                    })
    return CostabilityReport(q, n, divisors, witnesses, checked)


def unit_characters(m: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(m)) for i in range(m)]


@dataclass
class MainCheckReport:
    q: int
    n: int
    d: int
    m: int
    flags: dict[str, bool]
    route: str | None
    costability: CostabilityReport | None
    failures: list[dict]

    @property
    def passed(self) -> bool:
        return self.route is not None

    @property
    def singularity_type(self) -> str | None:
        return f"C({self.q},sl({self.n}))" if self.passed else None

    @property
    def obstructed(self) -> bool:
        return self.q >= 2 and self.n >= 2

    @property
    def reducible(self) -> bool:
        return self.n >= 4 and self.q >= 3 + Fraction(8, self.n - 3)

    @property
    def witnesses(self) -> list[dict]:
        out = list(self.failures)
        if self.costability is not None:
            out += self.costability.witnesses
        return out

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "flags": dict(sorted(self.flags.items())),
            "route": self.route,
            "passed": self.passed,
            "type": self.singularity_type,
            "witnesses": self.witnesses,
        }
        if self.passed:
            out["obstructed"] = self.obstructed
            out["reducible"] = self.reducible
            if self.n >= 4:
                out["reducibility_threshold"] = format_rational(3 + Fraction(8, self.n - 3))
        return out


def theorem_main_check(
    q: int,
    n: int,
    d: int,
    m: int | None = None,
    characters: Iterable[Sequence[int]] | None = None,
    pfaffian: int = 1,
) -> MainCheckReport:
    """Hypotheses for a complete intersection of m divisors of class L(alpha_i, H, d).

    Two routes can certify the singularity type C(q, sl(n)):
    m = q+n-3 with d >= 2 and d(q+n-3) >= n+1, or a single hypersurface
    (m = 1) with q, n, d >= 2 and q+n+d >= 7.  Both also need distinct
    characters, H^1(L(alpha_i, H, d)) = 0 and the costability vanishing.
    """
    if q < 1 or n < 2:
        raise ValueError("need q >= 1 and n >= 2")
    full = q + n - 3
    if m is None:
        m = full
    chars = [tuple(c) for c in characters] if characters is not None else unit_characters(max(m, 0))
    if len(chars) != m:
        raise ValueError(f"expected {m} characters, got {len(chars)}")
    failures = []
    flags = {
        "degree_at_least_2": d >= 2,
        "degree_times_count_bound": d * full >= n + 1,
        "distinct_characters": len(set(chars)) == len(chars),
        "hypersurface_bound": q >= 2 and n >= 2 and d >= 2 and q + n + d >= 7,
    }
    if d >= 1:
        line = product_line_cohomology(q, n - 1, AHBundle((0,), Nondegenerate(0, pfaffian)), d)
        flags["sections_extend"] = line[1] == 0 if len(line) > 1 else True
    else:
        flags["sections_extend"] = False
    cost = None
    if 1 <= m <= full and d >= 1:
        cost = costability_check(q, n, [DivisorSpec(c, d) for c in chars], pfaffian)
        flags["costability"] = cost.passed
    else:
        flags["costability"] = False
        failures.append({"condition": "divisor_count", "group": f"m={m} outside 1..{full}"})
    for name in ("degree_at_least_2", "degree_times_count_bound", "distinct_characters", "sections_extend"):
        if not flags[name]:
            failures.append({"condition": name})
    common = all(flags[k] for k in ("degree_at_least_2", "distinct_characters", "sections_extend", "costability"))
    route = None
    if common and m == full and flags["degree_times_count_bound"]:
        route = "complete_intersection"
    elif common and m == 1 and flags["hypersurface_bound"]:
        route = "hypersurface"
    if route is None and common and not failures:
        failures.append({"condition": "no_route", "group": "neither parameter regime applies"})
    return MainCheckReport(q, n, d, m, flags, route, cost, failures)
