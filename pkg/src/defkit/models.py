"""The model DGLAs Q and R and the end-to-end scenario reports.

Q(q, g) = exterior(q) tensor (abelian(q) + g) models the deformations of
torus_q x Y with H^0(T_Y) = g.  Scenario reports use X = torus_q x P^{n-1}
and sl(n); the Q/R builders take the projective dimension n and use sl(n+1).
Every report names the sl rank explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cohom import theorem_main_check
from .commvar import commuting_ideal, determinantal_match_sl2, lemma31_bound, slot_variable
from .core.poly import PolyIdeal
from .core.rational import format_rational
from .defo import def_equations, primary_obstruction
from .graded import (
    DGLA,
    DGLAMorphism,
    GradedBasis,
    abelian,
    build_exterior,
    build_sl,
    direct_sum,
    quotient_by_ideal,
    quotient_map,
    tensor_with_algebra,
)


def _g_prefix(q: int, g: DGLA) -> str:
    # g's names are kept unless they collide with the torus names t1..tq
    return "g." if set(g.names) & {f"t{a}" for a in range(1, q + 1)} else ""


def build_Q(q: int, g: DGLA, max_degree: int | None = None) -> DGLA:
    """exterior(q) tensor (abelian(q) + g); ``max_degree`` drops higher degrees.

    The torus summand is named t1..tq.  If g uses any of those names, all of
    g's basis elements are prefixed with "g.".
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    S = direct_sum(abelian(q), g, prefixes=("", _g_prefix(q, g)))
    return tensor_with_algebra(S, build_exterior(q, max_degree), max_degree=max_degree)


def weighted_six() -> DGLA:
    """Six-dimensional DGLA with d of rank 1 from degree 1 to 2.

    Basis e (degree 0), u, v, w (degree 1), b, k (degree 2) with dw = b,
    [u,u] = 2b, [u,v] = b, [u,w] = k and ad_e the weight grading
    (u, v, w, b, k have weights 1, 1, 2, 2, 3).  H^1 = <u, v>, H^2 = <k>
    and the Kuranishi map is the cubic -(t_u^3 + t_u^2 t_v) k.
    """
    B = GradedBasis.of([("e", 0), ("u", 1), ("v", 1), ("w", 1), ("b", 2), ("k", 2)])
    i = B.index
    weights = {"u": 1, "v": 1, "w": 2, "b": 2, "k": 3}
    bracket = {(i("e"), i(x)): {i(x): w} for x, w in weights.items()}
    bracket[(i("u"), i("u"))] = {i("b"): 2}
    bracket[(i("u"), i("v"))] = {i("b"): 1}
    bracket[(i("u"), i("w"))] = {i("k"): 1}
    return DGLA(B, bracket, {i("w"): {i("b"): 1}})


def torus_block(L: DGLA, q: int) -> list[dict[int, Fraction]]:
    """Basis vectors t_a | b_k of exterior^1 tensor torus inside Q."""
    return [L.basis_vector(f"t{a}|b{k}") for k in range(1, q + 1) for a in range(1, q + 1)]


def _R_with_map(q: int, n: int, max_degree: int | None = None) -> tuple[DGLA, DGLAMorphism]:
    if q < 1 or n < 1:
        raise ValueError("need q >= 1 and n >= 1")
    Q = build_Q(q, build_sl(n + 1), max_degree)
    f = quotient_map(Q, torus_block(Q, q))
    return f.target, f


def build_R(q: int, n: int, max_degree: int | None = None) -> DGLA:
    """Q(q, sl(n+1)) modulo exterior^1 tensor torus; ideality is re-verified."""
    Q = build_Q(q, build_sl(n + 1), max_degree)
    return quotient_by_ideal(Q, torus_block(Q, q))


def quotient_morphism(q: int, n: int, max_degree: int | None = None) -> DGLAMorphism:
    return _R_with_map(q, n, max_degree)[1]


def split_rename(q: int, g: DGLA) -> dict[str, str]:
    """Q's degree-1 names to torus coordinates y{k}_{a} and slot coordinates x{k}_{i}."""
    ren = {}
    pre = _g_prefix(q, g)
    for k in range(1, q + 1):
        for a in range(1, q + 1):
            ren[f"t{a}|b{k}"] = f"y{k}_{a}"
        for i, name in enumerate(g.names, start=1):
            ren[f"{pre}{name}|b{k}"] = slot_variable(k, i)
    return ren


@dataclass
class SplitResult:
    torus_variables: tuple[str, ...]
    untouched: bool
    matches: bool
    generators: int

    @property
    def verified(self) -> bool:
        return self.untouched and self.matches


def verify_split(q: int, g: DGLA, ideal: PolyIdeal) -> SplitResult:
    """Check that ``ideal`` (def_equations of Q or R) is C^{q^2} x C(q, g).

    The torus variables must occur in no generator and the remaining
    generators must coincide with commuting_ideal(q, g) as polynomials.
    """
    ren = split_rename(q, g)
    names = {f"t{a}|b{k}" for k in range(1, q + 1) for a in range(1, q + 1)}
    torus = tuple(v for v in ideal.variables if v in names)
    untouched = not (ideal.used_variables() & set(torus))
    target = commuting_ideal(q, g).ideal
    moved = set()
    for p in ideal.nonzero_generators():
        if p.used_variables() & set(torus):
            return SplitResult(torus, False, False, len(ideal.nonzero_generators()))
        moved.add(p.rename({v: ren[v] for v in ideal.variables if v not in torus}, target.variables))
    matches = moved == set(target.nonzero_generators()) and len(moved) == len(ideal.nonzero_generators())
    return SplitResult(torus, untouched, matches, len(moved))


def corollary5_reducible(q: int, n: int) -> bool:
    return n >= 3 and q >= 3 + Fraction(8, n - 2)


@dataclass
class KuranishiSpaceReport:
    q: int
    n: int
    split: SplitResult
    lemma31: dict

    @property
    def smooth(self) -> bool:
        return self.split.generators == 0

    @property
    def reducible(self) -> bool:
        return corollary5_reducible(self.q, self.n)

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "n": self.n,
            "lie_algebra": f"sl({self.n + 1})",
            "type": f"C^{self.q * self.q} x C({self.q},sl({self.n + 1}))",
            "torus_variables": len(self.split.torus_variables),
            "split_verified": self.split.verified,
            "generators": self.split.generators,
            "smooth": self.smooth,
            "singular": not self.smooth,
            "reducible": self.reducible,
            "lemma31": self.lemma31,
        }
        if self.n >= 3:
            out["reducibility_threshold"] = format_rational(3 + Fraction(8, self.n - 2))
        return out


def kuranishi_space_report(q: int, n: int) -> KuranishiSpaceReport:
    """Deformation equations of torus_q x P^n through the model Q."""
    if q < 1 or n < 1:
        raise ValueError("need q >= 1 and n >= 1")
    g = build_sl(n + 1)
    ideal = def_equations(build_Q(q, g, max_degree=2))
    split = verify_split(q, g, ideal)
    return KuranishiSpaceReport(q, n, split, lemma31_bound(q, n + 1).to_json())


@dataclass
class ScenarioReport:
    q: int
    n: int
    d: int
    m: int
    flags: dict[str, bool]
    passed: bool
    singularity_type: str | None
    obstructed: bool | None
    reducible: bool | None
    witnesses: list[dict]
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "flags": dict(sorted(self.flags.items())),
            "passed": self.passed,
            "type": self.singularity_type,
            "obstructed": self.obstructed,
            "reducible": self.reducible,
            "witnesses": self.witnesses,
            "evidence": self.evidence,
        }


def obstruction_evidence(q: int, n: int) -> dict:
    """Count nonzero primary obstruction components of Q(q, sl(n))."""
    comps = primary_obstruction(build_Q(q, build_sl(n), max_degree=2))
    nonzero = sum(1 for p in comps if p)
    return {"components": len(comps), "nonzero": nonzero}


def theorem_A_report(q: int, n: int, d: int, m: int | None = None, characters=None) -> ScenarioReport:
    """Hypothesis check for torus_q x P^{n-1} plus model-level evidence on success."""
    check = theorem_main_check(q, n, d, m, characters)
    evidence: dict = {"route": check.route}
    if check.passed:
        ob = obstruction_evidence(q, n)
        evidence["primary_obstruction"] = ob
        evidence["lemma31"] = lemma31_bound(q, n).to_json()
        if check.obstructed and ob["nonzero"] == 0:
            raise AssertionError("model primary obstruction vanishes for an obstructed case")
        if (q, n) == (2, 2):
            evidence["determinantal"] = determinantal_match_sl2().to_json()
    return ScenarioReport(
        q=q,
        n=n,
        d=d,
        m=check.m,
        flags=check.flags,
        passed=check.passed,
        singularity_type=check.singularity_type,
        obstructed=check.obstructed if check.passed else None,
        reducible=check.reducible if check.passed else None,
        witnesses=check.witnesses,
        evidence=evidence,
    )
