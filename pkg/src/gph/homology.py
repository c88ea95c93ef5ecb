"""Minimal resolutions, Ext/Tor, homological dimensions and Gorenstein tests."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field
from typing import Any

from .errors import CutoffError, InputError, InternalError, VerificationError
from .exactla import Mat, quotient_maps, rank, solve_many, vstack
from .quiveralg import BoundAlgebra, opposite_algebra
from .rep import (Rep, RepMap, dual, free_module, hom_space, identity_map, kernel, cokernel,
                  map_from_generators, projective, regular, simple, zero_map)

DEFAULT_CUTOFF = 12


# -- three-valued answers -------------------------------------------------------

@dataclass
class Bound:
    """A dimension-style answer: a certified value or a lower bound from a cutoff."""

    value: int
    status: str  # "certified" | "cutoff"
    cutoff: int

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        if self.certified:
            return {"value": self.value, "status": "certified", "cutoff": self.cutoff}
        return {"value": f">={self.value}", "status": "cutoff", "cutoff": self.cutoff}

    def __str__(self):
        return str(self.value) if self.certified else f">={self.value}"


@dataclass
class Verdict:
    answer: str  # "yes" | "no" | "unknown"
    status: str = "certified"  # "certified" | "cutoff" | "unknown"
    d: int | None = None
    witness: Any = None
    reason: str = ""
    cutoff: int | None = None

    @property
    def yes(self) -> bool:
        return self.answer == "yes"

    @property
    def no(self) -> bool:
        return self.answer == "no"

    @property
    def unknown(self) -> bool:
        return self.answer == "unknown"

    def to_json(self) -> dict:
        out = {"answer": self.answer, "status": self.status}
        if self.d is not None:
            out["d"] = self.d
        if self.witness is not None:
            w = self.witness
            if isinstance(w, Rep):
                w = {"module": w.name, "dims": list(w.dim_vector())}
            out["witness"] = w
        if self.reason:
            out["reason"] = self.reason
        if self.cutoff is not None:
            out["cutoff"] = self.cutoff
        return out


# -- covers and syzygies --------------------------------------------------------

def top_generators(m: Rep) -> list[tuple[str, list]]:
    """Vectors spanning a complement of rad(m) = Σ im(arrows), vertex by vertex."""
    a = m.algebra
    f = m.field
    gens = []
    for v in a.vertices:
        d = m.dims[v]
        if d == 0:
            continue
        cols = []
        for arr in a.quiver.in_arrows[v]:
            cols.extend(m.action[arr.name].columns())
        span = Mat.from_columns(f, cols, d)
        _, sect = quotient_maps(span)
        for c in sect.columns():
            gens.append((v, c))
    return gens


def top_multiplicities(m: Rep) -> dict[str, int]:
    out = {v: 0 for v in m.algebra.vertices}
    for v, _ in top_generators(m):
        out[v] += 1
    return out


def projective_cover(m: Rep) -> tuple[Rep, RepMap]:
    """Minimal projective cover built from the top of m."""
    if m.free is not None:
        return m, identity_map(m)
    gens = top_generators(m)
    p = free_module(m.algebra, [v for v, _ in gens])
    epi = map_from_generators(p, m, [c for _, c in gens])
    return p, epi


def is_projective(m: Rep) -> bool:
    """Ω¹(m) = 0, i.e. the projective cover is an isomorphism."""
    if m.free is not None:
        return True
    mult = top_multiplicities(m)
    a = m.algebra
    for v in a.vertices:
        cover_dim = sum(mult[g] * len(a.basis_between(g, v)) for g in a.vertices)
        if cover_dim != m.dims[v]:
            return False
    return True


class Resolution:
    """A stretch of the minimal projective resolution of ``target``.

    ``terms[k]`` is P^{-k}; ``differentials[k]`` maps terms[k] -> terms[k-1]
    for k >= 1 and ``differentials[0]`` is the augmentation onto the target.
    ``syzygies[k]`` is Ω^k with its inclusion into terms[k-1].
    """

    def __init__(self, target: Rep):
        self.target = target
        self.terms: list[Rep] = []
        self.differentials: list[RepMap] = []
        self.syzygies: list[tuple[Rep, RepMap | None]] = [(target, None)]
        self.finished = target.dim == 0

    @property
    def length(self) -> int:
        return len(self.terms)

    def extend(self) -> None:
        if self.finished:
            return
        omega, inc = self.syzygies[-1]
        p, epi = projective_cover(omega)
        d = epi if inc is None else inc @ epi
        self.terms.append(p)
        self.differentials.append(d)
        k, kinc = kernel(epi)
        k.name = f"Ω^{len(self.terms)}({self.target.name or 'M'})"
        self.syzygies.append((k, kinc))
        if k.dim == 0:
            self.finished = True

    def term(self, k: int) -> Rep:
        """P^{-k}, the zero module past the end of a finished resolution."""
        if k < len(self.terms):
            return self.terms[k]
        if self.finished:
            return free_module(self.target.algebra, [])
        raise CutoffError(f"resolution term {k} not computed")

    def differential(self, k: int) -> RepMap | None:
        if k < len(self.differentials):
            return self.differentials[k]
        if self.finished:
            return None
        raise CutoffError(f"differential {k} not computed")

    def multiplicities(self) -> list[list[int]]:
        verts = self.target.algebra.vertices
        return [[t.free.multiplicities(verts)[v] for v in verts] for t in self.terms]

    def to_json(self, terms: int | None = None) -> dict:
        """Serialise the first ``terms`` terms, so shared cache growth does not leak into output."""
        from .io import mat_to_json

        n = self.length if terms is None else min(terms, self.length)
        done = self.finished and n == self.length
        return {
            "target": self.target.name,
            "vertices": list(self.target.algebra.vertices),
            "multiplicities": self.multiplicities()[:n],
            "differentials": [{v: mat_to_json(b) for v, b in d.blocks.items()} for d in self.differentials[1:n]],
            "finished": done,
            "length": n - 1 if done else None,
            "minimal": True,
        }


class _ResolutionStore:
    """Resolutions cached by module content; readers share, one writer extends at a time."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    def get(self, m: Rep, terms: int) -> Resolution:
        key = m.key()
        with self._lock:
            res = self._data.get(key)
            if res is None:
                res = Resolution(m)
                self._data[key] = res
            while res.length < terms and not res.finished:
                res.extend()
            return res

    def clear(self):
        with self._lock:
            self._data.clear()


RESOLUTIONS = _ResolutionStore()


def resolution(m: Rep, terms: int) -> Resolution:
    """The cached minimal resolution of m with at least ``terms`` terms (or finished)."""
    return RESOLUTIONS.get(m, terms)


def syzygy(m: Rep, n: int) -> Rep:
    if n < 0:
        raise InputError("syzygy degree must be non-negative")
    if n == 0:
        return m
    res = resolution(m, n)
    if n < len(res.syzygies):
        return res.syzygies[n][0]
    return free_module(m.algebra, [])


def min_resolution(m: Rep, cutoff: int = DEFAULT_CUTOFF) -> Resolution:
    """Minimal resolution computed through P^{-cutoff} (or until it stops)."""
    if cutoff < 0:
        raise InputError("cutoff must be non-negative")
    return resolution(m, cutoff + 1)


# -- functor matrices -----------------------------------------------------------

def _generator_column(d: RepMap, g: int) -> list:
    p = d.source
    v = p.free.gens[g]
    return d.blocks[v].col(p.free.gen_pos[g])


def hom_functor_matrix(d: RepMap, n: Rep) -> Mat:
    """Hom(d, n): Hom(target, n) -> Hom(source, n) for d between free modules.

    A map from a free module is recorded by the images of its generators, so
    Hom(P, n) has coordinates ⊕_g n_{v(g)}.
    """
    src, tgt = d.source, d.target
    f = n.field
    col_off, row_off = [], []
    total = 0
    for v in tgt.free.gens:
        col_off.append(total)
        total += n.dims[v]
    ncols = total
    total = 0
    for v in src.free.gens:
        row_off.append(total)
        total += n.dims[v]
    out = Mat.zeros(f, total, ncols)
    for gp, vp in enumerate(src.free.gens):
        col = _generator_column(d, gp)
        for j, c in enumerate(col):
            if not c:
                continue
            g, word = tgt.free.words[vp][j]
            block = n.path_matrix(word, tgt.free.gens[g])
            r0, c0 = row_off[gp], col_off[g]
            for r, row in enumerate(block.rows):
                orow = out.rows[r0 + r]
                for k, x in enumerate(row):
                    if x:
                        orow[c0 + k] = orow[c0 + k] + c * x
    return out


def tensor_functor_matrix(d: RepMap, x: Rep) -> Mat:
    """x ⊗ d for d between free modules over Γ and x a module over Γ^op.

    Uses x ⊗_Γ Γe_v = x_v; a path word of Γ acts on x through its reversal.
    """
    src, tgt = d.source, d.target
    f = x.field
    col_off, row_off = [], []
    total = 0
    for v in src.free.gens:
        col_off.append(total)
        total += x.dims[v]
    ncols = total
    total = 0
    for v in tgt.free.gens:
        row_off.append(total)
        total += x.dims[v]
    out = Mat.zeros(f, total, ncols)
    for gp, vp in enumerate(src.free.gens):
        col = _generator_column(d, gp)
        for j, c in enumerate(col):
            if not c:
                continue
            g, word = tgt.free.words[vp][j]
            block = x.path_matrix(tuple(reversed(word)), vp)
            r0, c0 = row_off[g], col_off[gp]
            for r, row in enumerate(block.rows):
                orow = out.rows[r0 + r]
                for k, y in enumerate(row):
                    if y:
                        orow[c0 + k] = orow[c0 + k] + c * y
    return out


def _free_dim(p: Rep, n: Rep) -> int:
    return sum(n.dims[v] for v in p.free.gens)


def _check_same(a: BoundAlgebra, b: BoundAlgebra, what: str):
    if a is not b and a != b:
        raise InputError(f"{what}: modules over different algebras")


def _ensure(m: Rep, terms: int, cutoff: int | None) -> Resolution:
    # cutoff N allows degrees up to N, which needs terms 0..N+1
    res = resolution(m, terms if cutoff is None else min(terms, cutoff + 2))
    if res.length < terms and not res.finished:
        raise CutoffError(f"needs larger cutoff: resolution of {m.name or 'module'} truncated at {res.length}")
    return res


def ext(m: Rep, n: Rep, i: int, cutoff: int | None = None) -> int:
    """dim Ext^i(m, n) from the minimal resolution of m."""
    _check_same(m.algebra, n.algebra, "ext")
    if i < 0:
        raise InputError("negative Ext degree")
    res = _ensure(m, i + 2, cutoff)
    pi = res.term(i)
    c_i = _free_dim(pi, n)
    if c_i == 0:
        return 0
    d_next = res.differential(i + 1)
    r_out = rank(hom_functor_matrix(d_next, n)) if d_next is not None else 0
    if i == 0:
        r_in = 0
    else:
        d_in = res.differential(i)
        r_in = rank(hom_functor_matrix(d_in, n)) if d_in is not None else 0
    return c_i - r_out - r_in


def ext_range(m: Rep, n: Rep, lo: int, hi: int, cutoff: int | None = None) -> list[int]:
    """[dim Ext^i(m, n) for lo <= i <= hi], sharing rank computations."""
    _check_same(m.algebra, n.algebra, "ext")
    res = _ensure(m, hi + 2, cutoff)
    ranks = {}

    def r(k):
        if k not in ranks:
            d = res.differential(k) if k >= 1 else None
            ranks[k] = rank(hom_functor_matrix(d, n)) if d is not None else 0
        return ranks[k]

    out = []
    for i in range(lo, hi + 1):
        ci = _free_dim(res.term(i), n)
        out.append(0 if ci == 0 else ci - r(i + 1) - (r(i) if i >= 1 else 0))
    return out


def tor(v: Rep, x: Rep, i: int, cutoff: int | None = None) -> int:
    """dim Tor_i(v, x) for v over Γ^op and x over Γ."""
    return tor_range(v, x, i, i, cutoff)[0]


def tor_range(v: Rep, x: Rep, lo: int, hi: int, cutoff: int | None = None) -> list[int]:
    op = opposite_algebra(x.algebra)
    _check_same(v.algebra, op, "tor")
    res = _ensure(v, hi + 2, cutoff)
    ranks = {}

    def r(k):
        if k not in ranks:
            d = res.differential(k) if k >= 1 else None
            ranks[k] = rank(tensor_functor_matrix(d, x)) if d is not None else 0
        return ranks[k]

    out = []
    for i in range(lo, hi + 1):
        ti = _free_dim(res.term(i), x)
        out.append(0 if ti == 0 else ti - r(i) - r(i + 1))
    return out


# -- dimensions -----------------------------------------------------------------

def proj_dim(m: Rep, cutoff: int = DEFAULT_CUTOFF) -> Bound:
    res = resolution(m, cutoff + 1)
    if res.finished:
        return Bound(max(res.length - 1, 0), "certified", cutoff)
    return Bound(cutoff + 1, "cutoff", cutoff)


def inj_dim_algebra(a: BoundAlgebra, cutoff: int = DEFAULT_CUTOFF, side: str = "left") -> Bound:
    """Injective dimension of the left (or right) regular module.

    id(_ΓΓ) = pd of D(_ΓΓ) over Γ^op; id(Γ_Γ) = pd of D(Γ^op) over Γ.
    """
    if side == "left":
        return proj_dim(dual(regular(a)), cutoff)
    if side == "right":
        return proj_dim(dual(regular(opposite_algebra(a))), cutoff)
    raise InputError(f"side must be 'left' or 'right', got {side!r}")


def gldim(a: BoundAlgebra, cutoff: int = DEFAULT_CUTOFF) -> Bound:
    best = 0
    for v in a.vertices:
        b = proj_dim(simple(a, v), cutoff)
        if not b.certified:
            return Bound(cutoff + 1, "cutoff", cutoff)
        best = max(best, b.value)
    return Bound(best, "certified", cutoff)


def is_gorenstein(a: BoundAlgebra, cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    left = inj_dim_algebra(a, cutoff, "left")
    right = inj_dim_algebra(a, cutoff, "right")
    if left.certified and right.certified:
        if left.value != right.value:
            raise InternalError(f"one-sided injective dimensions differ: {left.value} vs {right.value}")
        return Verdict("yes", "certified", d=left.value, cutoff=cutoff)
    return Verdict("unknown", "cutoff", reason="no finite injective dimension within cutoff", cutoff=cutoff)


def is_selfinjective(a: BoundAlgebra, cutoff: int = DEFAULT_CUTOFF) -> bool:
    g = is_gorenstein(a, cutoff)
    return g.yes and g.d == 0


# -- Gorenstein projectivity ----------------------------------------------------

GPROJ_STRATEGIES = ("gorenstein", "bounded", "auto")


def is_gproj(m: Rep, strategy: str = "auto", cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    if strategy not in GPROJ_STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}")
    a = m.algebra
    if is_projective(m):
        return Verdict("yes", "certified", witness="projective", reason="projective module", cutoff=cutoff)
    gor = is_gorenstein(a, cutoff)
    if strategy == "gorenstein" and not gor.yes:
        raise InputError("gorenstein strategy needs a certified Gorenstein algebra")
    if strategy == "auto":
        strategy = "gorenstein" if gor.yes else "bounded"
    reg = regular(a)
    if strategy == "gorenstein":
        d = gor.d
        if d == 0:
            return Verdict("yes", "certified", d=0, reason="selfinjective algebra", cutoff=cutoff)
        exts = ext_range(m, reg, 1, d)
        for i, e in enumerate(exts, start=1):
            if e:
                return Verdict("no", "certified", d=d, witness={"ext_degree": i, "dim": e},
                               reason="Ext^i(m, regular) != 0", cutoff=cutoff)
        return Verdict("yes", "certified", d=d, reason=f"Ext^1..{d}(m, regular) = 0", cutoff=cutoff)
    exts = ext_range(m, reg, 1, cutoff)
    for i, e in enumerate(exts, start=1):
        if e:
            return Verdict("no", "certified", witness={"ext_degree": i, "dim": e},
                           reason="Ext^i(m, regular) != 0", cutoff=cutoff)
    if gor.yes and gor.d <= cutoff:
        return Verdict("yes", "certified", d=gor.d, reason=f"Ext^1..{cutoff}(m, regular) = 0", cutoff=cutoff)
    return Verdict("unknown", "cutoff", reason=f"Ext^1..{cutoff}(m, regular) = 0 over an uncertified algebra",
                   cutoff=cutoff)


def is_cm_free(a: BoundAlgebra, cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    gor = is_gorenstein(a, cutoff)
    if gor.yes:
        d = gor.d
        for v in a.vertices:
            om = syzygy(simple(a, v), d)
            if not is_projective(om):
                om.name = om.name or f"Ω^{d}(S({v}))"
                if d == 0:
                    om.name = f"S({v})"
                return Verdict("no", "certified", d=d, witness=om,
                               reason="non-projective Gorenstein projective module", cutoff=cutoff)
        return Verdict("yes", "certified", d=d, reason=f"gldim <= {d}", cutoff=cutoff)
    return Verdict("unknown", "cutoff", reason="algebra not certified Gorenstein within cutoff", cutoff=cutoff)


# -- complete resolutions -------------------------------------------------------

def hom_to_regular(m: Rep) -> tuple[Rep, dict[str, list[RepMap]]]:
    """m* = Hom(m, Γ) as a module over Γ^op, with the hom bases per vertex."""
    a = m.algebra
    op = opposite_algebra(a)
    f = a.field
    projs = {v: projective(a, v) for v in a.vertices}
    bases = {v: hom_space(m, projs[v]) for v in a.vertices}

    def flat(h: RepMap) -> list:
        out = []
        for v in a.vertices:
            for row in h.blocks[v].rows:
                out.extend(row)
        return out

    flat_dim = {v: sum(projs[v].dims[u] * m.dims[u] for u in a.vertices) for v in a.vertices}
    coord_mats = {v: Mat.from_columns(f, [flat(h) for h in bases[v]], flat_dim[v]) for v in a.vertices}
    action = {}
    for arr in a.arrows:
        s, t = arr.source, arr.target
        rho = right_multiplication(a, arr.name)
        imgs = [flat(rho @ h) for h in bases[t]]
        if not imgs or not bases[s]:
            action[arr.name] = Mat.zeros(f, len(bases[s]), len(bases[t]))
            continue
        rhs = Mat.from_columns(f, imgs, flat_dim[s])
        sol = solve_many(coord_mats[s], rhs)
        if sol is None:
            raise InternalError("right multiplication leaves the hom space")
        action[arr.name] = sol
    dims = {v: len(bases[v]) for v in a.vertices}
    mstar = Rep(op, dims, action, name=f"{m.name or 'M'}*", check=False)
    return mstar, bases


def right_multiplication(a: BoundAlgebra, arrow: str) -> RepMap:
    """P(t) -> P(s), p ↦ p·α for the arrow α: s -> t."""
    arr = a.quiver.arrow(arrow)
    s, t = arr.source, arr.target
    ps, pt = projective(a, s), projective(a, t)
    f = a.field
    ai = a.index[(s, (arrow,))]
    blocks = {}
    for v in a.vertices:
        src_idx = a.basis_between(t, v)
        tgt_idx = a.basis_between(s, v)
        pos = {b: k for k, b in enumerate(tgt_idx)}
        b = Mat.zeros(f, len(tgt_idx), len(src_idx))
        for col, p in enumerate(src_idx):
            for k, c in a.mul_basis(p, ai).items():
                b.rows[pos[k]][col] = c
        blocks[v] = b
    return RepMap(pt, ps, blocks, check=False)


def left_approximation(m: Rep) -> RepMap:
    """Minimal left add(Γ)-approximation m -> ⊕P(i), dual to the minimal cover of m*."""
    a = m.algebra
    mstar, bases = hom_to_regular(m)
    gens = top_generators(mstar)
    target = free_module(a, [v for v, _ in gens])
    f = a.field
    blocks = {}
    for u in a.vertices:
        parts = []
        for v, coords in gens:
            h = None
            for c, basis_map in zip(coords, bases[v]):
                if c:
                    term = basis_map.blocks[u].scale(c)
                    h = term if h is None else h + term
            if h is None:
                h = Mat.zeros(f, projective(a, v).dims[u], m.dims[u])
            parts.append(h)
        blocks[u] = vstack(parts) if parts else Mat.zeros(f, 0, m.dims[u])
    return RepMap(m, target, blocks, check=False)


@dataclass
class CompleteResolution:
    cocycle: Rep
    window: tuple[int, int]
    terms: dict[int, Rep]
    differentials: dict[int, RepMap]
    checks: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        from .io import mat_to_json

        verts = self.cocycle.algebra.vertices
        return {
            "cocycle": self.cocycle.name,
            "window": list(self.window),
            "vertices": list(verts),
            "multiplicities": {str(k): [t.free.multiplicities(verts)[v] for v in verts]
                               for k, t in sorted(self.terms.items())},
            "differentials": {str(k): {v: mat_to_json(b) for v, b in d.blocks.items()}
                              for k, d in sorted(self.differentials.items())},
            "checks": self.checks,
        }


def verify_complex(terms: dict[int, Rep], diffs: dict[int, RepMap], lo: int, hi: int,
                   reg: Rep | None = None) -> dict:
    """Exactness (and Hom(−, reg)-exactness) at degrees lo..hi by rank counts."""
    failures = []
    for k in range(lo, hi + 1):
        t = terms[k]
        din, dout = diffs.get(k - 1), diffs.get(k)
        if din is not None and dout is not None and not (dout @ din).is_zero():
            failures.append({"degree": k, "kind": "d∘d != 0"})
        for v in t.algebra.vertices:
            rin = rank(din.blocks[v]) if din is not None else 0
            rout = rank(dout.blocks[v]) if dout is not None else 0
            if rin + rout != t.dims[v]:
                failures.append({"degree": k, "vertex": v, "kind": "not exact"})
        if reg is not None:
            hin = rank(hom_functor_matrix(dout, reg)) if dout is not None else 0
            hout = rank(hom_functor_matrix(din, reg)) if din is not None else 0
            if hin + hout != _free_dim(t, reg):
                failures.append({"degree": k, "kind": "Hom(-, regular) not exact"})
    return {"degrees": [lo, hi], "exact": not failures, "failures": failures}


def complete_resolution(m: Rep, window: int = 3, cutoff: int = DEFAULT_CUTOFF) -> CompleteResolution:
    """Degrees -window..window of a complete resolution with cocycle m (image of T^0 -> T^1)."""
    a = m.algebra
    gp = is_gproj(m, "auto", cutoff)
    if not gp.yes:
        raise InputError("complete resolution needs a Gorenstein projective module")
    res = resolution(m, window + 1)
    terms: dict[int, Rep] = {}
    diffs: dict[int, RepMap] = {}
    for k in range(0, window + 1):
        terms[-k] = res.term(k)
    for k in range(1, window + 1):
        d = res.differential(k)
        diffs[-k] = d if d is not None else zero_map(terms[-k], terms[-k + 1])
    eps = res.differential(0)
    current = m
    proj_to_current = eps
    for k in range(1, window + 1):
        eta = left_approximation(current)
        if not eta.is_injective():
            raise VerificationError(f"approximation in degree {k} is not injective")
        terms[k] = eta.target
        diffs[k - 1] = eta @ proj_to_current
        current, proj_to_current = cokernel(eta)
    reg = regular(a)
    checks = verify_complex(terms, diffs, -window + 1, window - 1, reg)
    if not checks["exact"]:
        raise VerificationError(f"complete resolution check failed: {checks['failures']}")
    return CompleteResolution(m, (-window, window), terms, diffs, checks)
