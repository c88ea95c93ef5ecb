"""Monomorphism categories Mon(B, A) and Mon(B, L) over a tensor algebra Λ = A ⊗ B."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InputError, InternalError, VerificationError
from .homology import (DEFAULT_CUTOFF, Verdict, ext_range, gldim, is_cm_free, is_gorenstein, is_gproj,
                       is_projective, left_approximation, tor_range)
from .quiveralg import BoundAlgebra, opposite_algebra
from .rep import Rep, RepMap, cokernel, dual, regular, restrict, simple
from .tensorrep import functor_V_tensor, tensor_module

SIDES = ("B-over-A", "A-over-B")
MODES = ("fast", "cross-validate")
CLASSES = ("proj", "gproj", "all")


@dataclass
class MonReport:
    module: str
    side: str
    verdict: str  # "yes" | "no" | "unknown"
    criteria: dict = dc_field(default_factory=dict)
    factor_images: list = dc_field(default_factory=list)
    strategy_trace: list = dc_field(default_factory=list)
    L: str | None = None

    @property
    def member(self) -> bool:
        return self.verdict == "yes"

    def __bool__(self):
        return self.member

    def to_json(self) -> dict:
        out = {"module": self.module, "side": self.side, "verdict": self.verdict, "criteria": self.criteria,
               "factor_images": self.factor_images, "strategy_trace": self.strategy_trace}
        if self.L is not None:
            out["L"] = self.L
        return out


def _factors(lam: BoundAlgebra) -> tuple[BoundAlgebra, BoundAlgebra]:
    if lam.tensor_of is None:
        raise InputError("monomorphism categories need a module over a remembered tensor product")
    return lam.tensor_of


def tor_test_modules(lam: BoundAlgebra, side: str = "B-over-A") -> list[tuple[str, Rep]]:
    """Right Λ-modules A⊗D(S) (or D(S)⊗B) for the simple modules S of the base factor."""
    a, b = _factors(lam)
    aop, bop = opposite_algebra(a), opposite_algebra(b)
    lop = opposite_algebra(lam)
    if side == "B-over-A":
        return [(j, tensor_module(regular(aop), dual(simple(b, j)), lop)) for j in b.vertices]
    return [(i, tensor_module(dual(simple(a, i)), regular(bop), lop)) for i in a.vertices]


def ext_test_modules(lam: BoundAlgebra, side: str = "B-over-A") -> list[tuple[str, Rep]]:
    """Left Λ-modules D(A)⊗S (or S⊗D(B)), dual to the Tor test modules."""
    a, b = _factors(lam)
    aop, bop = opposite_algebra(a), opposite_algebra(b)
    if side == "B-over-A":
        return [(j, tensor_module(dual(regular(aop)), simple(b, j), lam)) for j in b.vertices]
    return [(i, tensor_module(simple(a, i), dual(regular(bop)), lam)) for i in a.vertices]


def mon_membership(x: Rep, side: str = "B-over-A", mode: str = "fast",
                   cutoff: int = DEFAULT_CUTOFF) -> MonReport:
    """Membership of x in Mon(B, A) (side "B-over-A") or Mon(A, B) (side "A-over-B").

    Fast mode checks that the restriction to the base factor is projective.
    Cross-validate mode also evaluates the Tor and Ext criteria up to cutoff
    and raises InternalError on any disagreement.
    """
    if side not in SIDES:
        raise InputError(f"side must be one of {SIDES}")
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}")
    lam = x.algebra
    _factors(lam)
    name = x.name or "X"
    if x.dim == 0:
        return MonReport(name, side, "yes", {"zero_module": True})
    r = restrict(x, "B" if side == "B-over-A" else "A")
    fast = is_projective(r)
    criteria = {"restriction_projective": fast}
    if mode == "cross-validate":
        tor_fail = []
        for label, v in tor_test_modules(lam, side):
            for i, d in enumerate(tor_range(v, x, 1, cutoff), start=1):
                if d:
                    tor_fail.append({"simple": f"S_{label}", "degree": i, "dim": d})
        ext_fail = []
        for label, n in ext_test_modules(lam, side):
            for i, d in enumerate(ext_range(x, n, 1, cutoff), start=1):
                if d:
                    ext_fail.append({"simple": f"S_{label}", "degree": i, "dim": d})
        criteria["tor_vanishing"] = {"cutoff": cutoff, "failures": tor_fail}
        criteria["ext_vanishing"] = {"cutoff": cutoff, "failures": ext_fail}
        for crit, fails in (("tor", tor_fail), ("ext", ext_fail)):
            if fast and fails:
                raise InternalError(f"{name}: restriction projective but {crit} criterion fails: {fails[0]}")
            if not fast and not fails:
                raise InternalError(f"{name}: restriction not projective but {crit} criterion vanishes")
        if {(f["simple"], f["degree"], f["dim"]) for f in tor_fail} != \
                {(f["simple"], f["degree"], f["dim"]) for f in ext_fail}:
            raise InternalError(f"{name}: Tor and Ext dimensions differ")
    return MonReport(name, side, "yes" if fast else "no", criteria)


def _class_member(f: Rep, L: str, strategy: str, cutoff: int) -> tuple[str, str]:
    if L == "all":
        return "yes", "every module"
    if L == "proj":
        return ("yes", "projective") if is_projective(f) else ("no", "not projective")
    v = is_gproj(f, strategy, cutoff)
    return v.answer, v.reason


def mon_L_membership(x: Rep, L: str = "gproj", cutoff: int = DEFAULT_CUTOFF,
                     strategy: str = "auto") -> MonReport:
    """Membership in Mon(B, L): x ∈ Mon(B, A) and S ⊗_B x ∈ L for every simple right B-module S."""
    if L not in CLASSES:
        raise InputError(f"L must be one of {CLASSES}")
    lam = x.algebra
    a, b = _factors(lam)
    base = mon_membership(x, "B-over-A", "fast", cutoff)
    base.L = L
    if not base.member:
        return base
    if x.dim == 0:
        return base
    bop = opposite_algebra(b)
    images, answers = [], []
    for j in b.vertices:
        img = functor_V_tensor(simple(bop, j), x)
        ans, why = _class_member(img, L, strategy, cutoff)
        answers.append(ans)
        images.append({"simple": f"S_{j}", "dims": list(img.dim_vector()), "in_L": ans, "reason": why})
    if "no" in answers:
        verdict = "no"
    elif "unknown" in answers:
        verdict = "unknown"
    else:
        verdict = "yes"
    return MonReport(base.module, base.side, verdict, base.criteria, images, L=L)


@dataclass
class Embedding:
    mono: RepMap
    cokernel: Rep
    projection: RepMap
    cokernel_report: MonReport

    def to_json(self) -> dict:
        verts = self.mono.target.algebra.vertices
        mult = self.mono.target.free.multiplicities(verts)
        return {"module": self.mono.source.name, "target_multiplicities": [mult[v] for v in verts],
                "injective": self.mono.is_injective(), "cokernel_dims": list(self.cokernel.dim_vector()),
                "cokernel_report": self.cokernel_report.to_json()}


def embed_into_projectives(x: Rep, max_multiplicity: int | None = None,
                           cutoff: int = DEFAULT_CUTOFF) -> Embedding:
    """Left add(Λ)-approximation x -> Λ^n, checked injective, with cokernel in Mon(B, A-Gproj)."""
    rep = mon_L_membership(x, "gproj", cutoff)
    if not rep.member:
        raise InputError(f"{x.name or 'module'} is not in Mon(B, A-Gproj) (verdict {rep.verdict})")
    eta = left_approximation(x)
    n = len(eta.target.free.gens)
    if max_multiplicity is not None and n > max_multiplicity:
        raise VerificationError(f"approximation needs {n} summands > {max_multiplicity}")
    if not eta.is_injective():
        raise VerificationError("left approximation by projectives is not injective")
    c, proj = cokernel(eta)
    c.name = f"coker({x.name or 'X'})"
    crep = mon_L_membership(c, "gproj", cutoff)
    if not crep.member:
        raise VerificationError(f"cokernel of the embedding left Mon(B, A-Gproj): {crep.verdict}")
    return Embedding(eta, c, proj, crep)


@dataclass
class GprojDecision:
    answer: str
    trace: list

    @property
    def yes(self) -> bool:
        return self.answer == "yes"

    def to_json(self) -> dict:
        return {"answer": self.answer, "strategy_trace": self.trace}


def gproj_decide(x: Rep, cutoff: int = DEFAULT_CUTOFF) -> GprojDecision:
    """Gorenstein projectivity over Λ = A⊗B by a ladder of sufficient strategies.

    (i) Λ Gorenstein: Ext vanishing against Λ up to its injective dimension.
    (ii) gldim(B) finite: membership in Mon(B, A-Gproj).
    (iii) A Gorenstein and B CM-free: membership in Mon(B, A-Gproj).
    (iv) otherwise Mon(B, A-Gproj) membership proves yes, a bounded Ext test
    refutes, and anything else is unknown. Strategies that fire must agree.
    """
    lam = x.algebra
    a, b = _factors(lam)
    trace = []
    if x.dim == 0:
        return GprojDecision("yes", [{"strategy": "zero", "answer": "yes"}])
    gor = is_gorenstein(lam, cutoff)
    if gor.yes:
        v = is_gproj(x, "gorenstein", cutoff)
        trace.append({"strategy": "i", "rule": f"Λ Gorenstein, injdim {gor.d}", "answer": v.answer})
    gl = gldim(b, cutoff)
    if gl.certified:
        m = mon_L_membership(x, "gproj", cutoff)
        trace.append({"strategy": "ii", "rule": f"gldim(B) = {gl.value}", "answer": m.verdict})
    else:
        ga = is_gorenstein(a, cutoff)
        cm = is_cm_free(b, cutoff)
        if ga.yes and cm.yes:
            m = mon_L_membership(x, "gproj", cutoff)
            trace.append({"strategy": "iii", "rule": "A Gorenstein and B CM-free", "answer": m.verdict})
    decided = [t["answer"] for t in trace if t["answer"] != "unknown"]
    if len(set(decided)) > 1:
        raise InternalError(f"strategies disagree on {x.name or 'module'}: {trace}")
    if decided:
        return GprojDecision(decided[0], trace)
    m = mon_L_membership(x, "gproj", cutoff)
    if m.member:
        trace.append({"strategy": "iv", "rule": "Mon(B, A-Gproj) is contained in Λ-Gproj", "answer": "yes"})
        return GprojDecision("yes", trace)
    v = is_gproj(x, "bounded", cutoff)
    trace.append({"strategy": "iv", "rule": "bounded Ext test", "answer": v.answer})
    return GprojDecision(v.answer, trace)


def monic_rank_test_square(x: Rep, arrows=("alpha", "beta", "gamma", "delta")) -> bool:
    """Rank form of Mon(B, A) membership when B is the commutative square 1->2,1->3,2->4,3->4.

    Requires X_α and X_β injective and exactness of X_1 -> X_2 ⊕ X_3 -> X_4.
    """
    from .exactla import hstack, rank, vstack

    lam = x.algebra
    a, b = _factors(lam)
    al, be, ga, de = arrows
    f = lam.field
    ok = True
    for i in a.vertices:
        xa, xb = x.action[f"{i}*{al}"], x.action[f"{i}*{be}"]
        xg, xd = x.action[f"{i}*{ga}"], x.action[f"{i}*{de}"]
        d1 = x.dims[f"{i}*{b.quiver.arrow(al).source}"]
        if rank(xa) != d1 or rank(xb) != d1:
            ok = False
        first = vstack([xa, xb])
        second = hstack([xg.scale(-f.one), xd])
        mid = first.nrows
        if rank(second) + rank(first) != mid:
            ok = False
    return ok
