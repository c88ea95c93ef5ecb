"""Filtrations with tensor-product factors: construction, replay verification and search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .errors import InputError, VerificationError
from .exactla import Mat, column_space, hstack, rank, solve
from .homology import DEFAULT_CUTOFF, is_gorenstein, is_gproj, is_projective, resolution, syzygy, top_multiplicities
from .quiveralg import BoundAlgebra, tensor_algebra
from .rep import (Rep, RepMap, cokernel, direct_sum, free_module, hom_space, identity_map, is_isomorphic,
                  kernel, lift_through_mono, map_from_generators)
from .tensorrep import tensor_map, tensor_module

DEFAULT_DEPTH = 8
SEARCH_MAPS_PER_NODE = 400


@dataclass
class Factor:
    """A filtration factor: a tensor pair (u, v) or an explicit module."""

    module: Rep
    kind: str = "explicit"  # "tensor" | "explicit"
    u: Rep | None = None
    v: Rep | None = None
    u_label: tuple = ()
    v_label: tuple = ()

    def describe(self) -> dict:
        if self.kind == "tensor":
            return {"kind": "tensor", "u": self.u.name, "v": self.v.name,
                    "u_label": list(self.u_label), "v_label": list(self.v_label),
                    "dims": list(self.module.dim_vector())}
        return {"kind": "explicit", "module": self.module.name, "dims": list(self.module.dim_vector())}


@dataclass
class FiltrationCert:
    """0 = Z_0 ⊂ Z_1 ⊂ ... ⊂ Z_m = ambient with Z_t/Z_{t-1} ≅ factors[t-1].

    ``chain[t-1]`` is the inclusion Z_t -> ambient and ``witnesses[t-1]`` a
    surjection Z_t -> factor with kernel Z_{t-1}. When ``complement`` is set,
    ``target ⊕ complement ≅ ambient`` through ``complement_iso``, so target is
    a direct summand of a filtered module.
    """

    ambient: Rep
    chain: list[RepMap]
    factors: list[Factor]
    witnesses: list[RepMap]
    target: Rep | None = None
    complement: Rep | None = None
    complement_iso: RepMap | None = None
    notes: dict = dc_field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "addfilt" if self.complement is not None and self.complement.dim > 0 else "filt"

    def to_json(self) -> dict:
        from .io import map_to_json

        out = {
            "ambient": {"name": self.ambient.name, "dims": list(self.ambient.dim_vector())},
            "kind": self.kind,
            "chain": [{"inclusion": map_to_json(c)} for c in self.chain],
            "factors": [dict(f.describe(), witness=map_to_json(w)) for f, w in zip(self.factors, self.witnesses)],
            "complement": None,
        }
        if self.target is not None:
            out["target"] = {"name": self.target.name, "dims": list(self.target.dim_vector())}
        if self.complement is not None:
            verts = self.complement.algebra.vertices
            mult = self.complement.free.multiplicities(verts) if self.complement.free else {}
            out["complement"] = {"multiplicities": [mult.get(v, 0) for v in verts],
                                 "iso": map_to_json(self.complement_iso)}
        out.update(self.notes)
        return out


@dataclass
class VerifyResult:
    ok: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "step": self.step, "reason": self.reason}


# -- verification -----------------------------------------------------------------

def _contains(big: RepMap, small: RepMap) -> bool:
    for v in big.source.algebra.vertices:
        b, s = big.blocks[v], small.blocks[v]
        if s.ncols == 0:
            continue
        if rank(hstack([b, s])) != rank(b):
            return False
    return True


def verify_filtration(cert: FiltrationCert) -> VerifyResult:
    """Replay every claim of a certificate with kernel/cokernel/isomorphism checks."""
    amb = cert.ambient
    if len(cert.chain) != len(cert.factors) or len(cert.chain) != len(cert.witnesses):
        return VerifyResult(False, None, "chain, factors and witnesses differ in length")
    if not cert.chain:
        if amb.dim != 0:
            return VerifyResult(False, 0, "empty chain for a nonzero module")
    prev: RepMap | None = None
    for t, (inc, fac, w) in enumerate(zip(cert.chain, cert.factors, cert.witnesses), start=1):
        if inc.target is not amb and inc.target.key() != amb.key():
            return VerifyResult(False, t, "inclusion does not land in the ambient module")
        if not inc.is_homomorphism() or not inc.is_injective():
            return VerifyResult(False, t, "inclusion is not an injective homomorphism")
        if prev is not None and not _contains(inc, prev):
            return VerifyResult(False, t, "chain is not nested")
        z = inc.source
        if w.source.key() != z.key() or w.target.key() != fac.module.key():
            return VerifyResult(False, t, "witness has the wrong source or target")
        if not w.is_homomorphism() or not w.is_surjective():
            return VerifyResult(False, t, "witness is not a surjective homomorphism")
        if prev is not None:
            j = lift_through_mono(prev, inc)
            if j is None:
                return VerifyResult(False, t, "previous step does not factor through this one")
            if not (w @ j).is_zero():
                return VerifyResult(False, t, "witness does not kill the previous step")
            sub_dim = prev.source.dim
        else:
            j = None
            sub_dim = 0
        if z.dim - fac.module.dim != sub_dim:
            return VerifyResult(False, t, "witness kernel is larger than the previous step")
        quot = cokernel(j)[0] if j is not None else z
        if quot.dim_vector() != fac.module.dim_vector() or not is_isomorphic(quot, fac.module):
            return VerifyResult(False, t, "quotient is not isomorphic to the declared factor")
        prev = inc
    if prev is not None and not prev.is_surjective():
        return VerifyResult(False, len(cert.chain), "chain does not exhaust the ambient module")
    if cert.complement is not None:
        iso = cert.complement_iso
        if iso is None or not iso.is_homomorphism() or not iso.is_iso():
            return VerifyResult(False, None, "complement isomorphism fails")
        if not is_projective(cert.complement):
            return VerifyResult(False, None, "complement is not projective")
        expected = direct_sum([cert.target, cert.complement])
        if iso.source.key() != expected.key() or iso.target.key() != amb.key():
            return VerifyResult(False, None, "complement isomorphism has the wrong source or target")
    elif cert.target is not None and cert.complement_iso is not None:
        iso = cert.complement_iso
        if not iso.is_homomorphism() or not iso.is_iso():
            return VerifyResult(False, None, "identification with the target fails")
    return VerifyResult(True)


# -- syzygy filtration -------------------------------------------------------------

@dataclass
class _Piece:
    inc: RepMap  # Z_t -> M
    proj: RepMap  # Z_t -> factor
    factor: Factor


def _cover_data(u: Rep):
    """(P, ε: P -> u, Ω(u), ι: Ω(u) -> P) from the cached minimal resolution."""
    res = resolution(u, 2)
    p = res.term(0)
    eps = res.differential(0)
    if len(res.syzygies) > 1:
        om, iota = res.syzygies[1]
    else:
        om = free_module(u.algebra, [])
        iota = RepMap(om, p, {v: Mat.zeros(u.field, p.dims[v], 0) for v in u.algebra.vertices}, check=False)
    return p, eps, om, iota


def _next_label(label: tuple) -> tuple:
    if label and label[0] == "syz":
        return ("syz", label[1] + 1, label[2])
    return ("zero",)


def _sub_rows(k_inc: RepMap, total: Rep, parts: Sequence[Rep], keep: Callable[[int], bool]) -> RepMap:
    """Compose K -> ⊕ parts with the projection onto the parts selected by ``keep``."""
    lam = total.algebra
    f = lam.field
    blocks = {}
    tgt_parts = [p for s, p in enumerate(parts) if keep(s)]
    tgt = direct_sum(tgt_parts) if tgt_parts else free_module(lam, [])
    for v in lam.vertices:
        rows, off = [], 0
        for s, p in enumerate(parts):
            d = p.dims[v]
            if keep(s):
                rows.extend(k_inc.blocks[v].rows[off:off + d])
            off += d
        blocks[v] = Mat(f, [list(r) for r in rows], k_inc.source.dims[v])
    return RepMap(k_inc.source, tgt, blocks, check=False)


def _horseshoe_step(m: Rep, pieces: list[_Piece], lam: BoundAlgebra, a_step: bool):
    """Kernel of a filtered projective cover of m, refined into tensor factors.

    Each factor U⊗V is covered by P⊗Q; the kernel L of P⊗Q -> U⊗V is filtered
    by P⊗Ω(V) ⊂ L with quotient Ω(U)⊗V (A-step) or by Ω(U)⊗Q ⊂ L with quotient
    U⊗Ω(V) (B-step).
    """
    f = lam.field
    covers, g_parts, psis = [], [], []
    for pc in pieces:
        fac = pc.factor
        p, ep, om_u, io_u = _cover_data(fac.u)
        q, eq, om_v, io_v = _cover_data(fac.v)
        g = tensor_module(p, q, lam, name=f"{p.name}⊗{q.name}")
        cov = tensor_map(ep, eq, lam, g, fac.module)
        images = []
        for gi, gv in enumerate(g.free.gens):
            target = cov.blocks[gv].col(g.free.gen_pos[gi])
            z = solve(pc.proj.blocks[gv], target)
            if z is None:
                raise VerificationError("factor witness is not surjective")
            images.append(pc.inc.blocks[gv].apply(z))
        psis.append(map_from_generators(g, m, images))
        covers.append((p, ep, om_u, io_u, q, eq, om_v, io_v, g))
        g_parts.append(g)
    big = direct_sum(g_parts)
    psi_blocks = {}
    for v in lam.vertices:
        cols = []
        for ps in psis:
            cols.extend(ps.blocks[v].columns())
        psi_blocks[v] = Mat.from_columns(f, cols, m.dims[v])
    psi = RepMap(big, m, psi_blocks, check=False)
    if not psi.is_surjective():
        raise VerificationError("lifted covers do not generate the module")
    k, k_inc = kernel(psi)
    new_pieces = []
    n = len(pieces)
    for t in range(n):
        if t == n - 1:
            kt, kt_inc = k, identity_map(k)
        else:
            kt, kt_inc = kernel(_sub_rows(k_inc, big, g_parts, lambda s, t=t: s > t))
        comp = _sub_rows(k_inc @ kt_inc, big, g_parts, lambda s, t=t: s == t)
        comp = RepMap(kt, g_parts[t], comp.blocks, check=False)
        p, ep, om_u, io_u, q, eq, om_v, io_v, g = covers[t]
        fac = pieces[t].factor
        if a_step:
            sub_u, sub_v, sub_lab = p, om_v, (("proj",), _next_label(fac.v_label))
            quo_u, quo_v, quo_lab = om_u, fac.v, (_next_label(fac.u_label), fac.v_label)
            sub_inc = tensor_map(identity_map(p), io_v, lam, None, g)
            to_quo = tensor_map(identity_map(p), eq, lam, g, None)
            quo_inc = tensor_map(io_u, identity_map(fac.v), lam, None, to_quo.target)
        else:
            sub_u, sub_v, sub_lab = om_u, q, (_next_label(fac.u_label), ("proj",))
            quo_u, quo_v, quo_lab = fac.u, om_v, (fac.u_label, _next_label(fac.v_label))
            sub_inc = tensor_map(io_u, identity_map(q), lam, None, g)
            to_quo = tensor_map(ep, identity_map(q), lam, g, None)
            quo_inc = tensor_map(identity_map(fac.u), io_v, lam, None, to_quo.target)
        w_quo = lift_through_mono(to_quo @ comp, quo_inc)
        if w_quo is None:
            raise VerificationError(f"step {t}: quotient factor does not contain the image")
        w_quo = RepMap(kt, quo_inc.source, w_quo.blocks, check=False)
        ksub, ksub_inc = kernel(w_quo)
        w_sub = lift_through_mono(comp @ ksub_inc, sub_inc)
        if w_sub is None:
            raise VerificationError(f"step {t}: sub factor does not contain the image")
        sub_fac = Factor(sub_inc.source, "tensor", sub_u, sub_v, *sub_lab)
        quo_fac = Factor(quo_inc.source, "tensor", quo_u, quo_v, *quo_lab)
        if sub_fac.module.dim:
            new_pieces.append(_Piece(kt_inc @ ksub_inc, w_sub, sub_fac))
        if quo_fac.module.dim:
            new_pieces.append(_Piece(kt_inc, w_quo, quo_fac))
    k.name = "K"
    return k, new_pieces


def syzygy_filtration(x: Rep, y: Rep, dA: int, dB: int, lam: BoundAlgebra | None = None) -> FiltrationCert:
    """Filtration of Ω^{dA+dB}(x⊗y) ⊕ C (C projective) by factors u⊗v with u ∈ Ω^dA, v ∈ Ω^dB.

    Runs dA A-steps then dB B-steps of the horseshoe construction on a filtered
    module; the final kernel differs from the minimal syzygy by the projective
    complement C, identified through an explicit isomorphism.
    """
    if dA < 0 or dB < 0:
        raise InputError("syzygy degrees must be non-negative")
    lam = lam if lam is not None else tensor_algebra(x.algebra, y.algebra)
    xy = tensor_module(x, y, lam)
    fac = Factor(xy, "tensor", x, y, ("syz", 0, x.name or "x"), ("syz", 0, y.name or "y"))
    m = xy
    pieces = [_Piece(identity_map(xy), identity_map(xy), fac)] if xy.dim else []
    for step in range(dA + dB):
        if not pieces:
            m = free_module(lam, [])
            break
        m, pieces = _horseshoe_step(m, pieces, lam, a_step=step < dA)
    n = dA + dB
    target = syzygy(xy, n)
    target.name = f"Ω^{n}({xy.name})"
    top_m = top_multiplicities(m)
    top_t = top_multiplicities(target)
    extra = []
    for v in lam.vertices:
        d = top_m[v] - top_t[v]
        if d < 0:
            raise VerificationError("filtered kernel has a smaller top than the minimal syzygy")
        extra.extend([v] * d)
    comp = free_module(lam, extra)
    source = direct_sum([target, comp]) if extra else target
    iso = is_isomorphic(source, m)
    if not iso.isomorphic or iso.witness is None:
        raise VerificationError("no isomorphism between syzygy ⊕ complement and the filtered kernel")
    cert = FiltrationCert(m, [pc.inc for pc in pieces], [pc.factor for pc in pieces],
                          [pc.proj for pc in pieces], target=target,
                          complement=comp if extra else None, complement_iso=iso.witness,
                          notes={"dA": dA, "dB": dB})
    return cert


# -- Ω-classes ------------------------------------------------------------------------

@dataclass
class OmegaClassClaim:
    """Claim that ``module`` lies in the class Ω^m over its algebra.

    evidence: {"kind": "gorenstein"}, {"kind": "projective"} or
    {"kind": "witness", "C": Rep} meaning module ≅ Ω^m(C).
    """

    module: Rep
    m: int
    evidence: dict


def omega_class_check(claim: OmegaClassClaim, cutoff: int = DEFAULT_CUTOFF) -> str:
    """"yes" when the evidence replays, otherwise "unknown"."""
    u = claim.module
    if u.dim == 0 or is_projective(u):
        return "yes"
    kind = claim.evidence.get("kind")
    if claim.m == 0:
        return "yes"
    if kind == "witness":
        c = claim.evidence["C"]
        om = syzygy(c, claim.m)
        if om.dim_vector() == u.dim_vector() and is_isomorphic(om, u):
            return "yes"
        return "unknown"
    if kind == "gorenstein":
        gor = is_gorenstein(u.algebra, cutoff)
        if gor.yes and is_gproj(u, "gorenstein", cutoff).yes:
            # Gorenstein projectives are syzygies of their own cosyzygies in every degree
            return "yes"
        return "unknown"
    return "unknown"


def factor_claims(cert: FiltrationCert, x: Rep, y: Rep) -> list[tuple[OmegaClassClaim, OmegaClassClaim]]:
    """Ω-class claims (u ∈ Ω^dA, v ∈ Ω^dB) for every terminal factor, from its labels."""
    dA, dB = cert.notes["dA"], cert.notes["dB"]
    out = []
    for fac in cert.factors:
        pair = []
        for mod, lab, base, d in ((fac.u, fac.u_label, x, dA), (fac.v, fac.v_label, y, dB)):
            if lab and lab[0] == "syz":
                c = syzygy(base, lab[1] - d) if lab[1] >= d else None
                ev = {"kind": "witness", "C": c} if c is not None else {"kind": "none"}
            else:
                ev = {"kind": "projective"}
            pair.append(OmegaClassClaim(mod, d, ev))
        out.append(tuple(pair))
    return out


# -- search ---------------------------------------------------------------------------

def _combos(n: int):
    """Coefficient vectors over {0, ±1}, by weight, first nonzero entry +1."""
    for w in range(1, n + 1):
        for support in itertools.combinations(range(n), w):
            for signs in itertools.product((1, -1), repeat=w - 1):
                vec = [0] * n
                vec[support[0]] = 1
                for s, idx in zip(signs, support[1:]):
                    vec[idx] = s
                yield vec


def _image_key(h: RepMap) -> tuple:
    return tuple((v, column_space(h.blocks[v]).key()) for v in h.source.algebra.vertices)


def _feasible(dv: tuple, factor_dvs: list[tuple], memo: dict) -> bool:
    if all(d == 0 for d in dv):
        return True
    if any(d < 0 for d in dv):
        return False
    if dv in memo:
        return memo[dv]
    ok = False
    for fd in factor_dvs:
        nxt = tuple(a - b for a, b in zip(dv, fd))
        if all(d >= 0 for d in nxt) and _feasible(nxt, factor_dvs, memo):
            ok = True
            break
    memo[dv] = ok
    return ok


def search_filtration(x: Rep, factor_set: Sequence[Factor | Rep], max_depth: int = DEFAULT_DEPTH,
                      keep: Callable[[Rep], bool] | None = None,
                      maps_per_node: int = SEARCH_MAPS_PER_NODE) -> FiltrationCert | None:
    """Depth-first search for a filtration of x with factors from ``factor_set``.

    At each node every injective F -> M (over a {0, ±1} grid of hom-basis
    combinations, distinct images only) is tried and the search recurses on
    the cokernel. ``keep`` optionally prunes cokernels known to lie outside the
    target class. Returns None when nothing is found, which proves nothing.
    """
    factors = [fc if isinstance(fc, Factor) else Factor(fc, "explicit") for fc in factor_set]
    factors = [fc for fc in factors if fc.module.dim > 0]
    dvs = [fc.module.dim_vector() for fc in factors]
    memo: dict = {}

    def rec(m: Rep, depth: int):
        if m.dim == 0:
            return []
        if depth == 0 or not _feasible(m.dim_vector(), dvs, memo):
            return None
        for fi, fc in enumerate(factors):
            if any(a > b for a, b in zip(dvs[fi], m.dim_vector())):
                continue
            basis = hom_space(fc.module, m)
            if not basis:
                continue
            seen = set()
            tried = 0
            for vec in _combos(len(basis)):
                if tried >= maps_per_node:
                    break
                h = None
                for c, b in zip(vec, basis):
                    if c:
                        term = b if c == 1 else b.scale(-m.field.one)
                        h = term if h is None else h + term
                if not h.is_injective():
                    continue
                key = _image_key(h)
                if key in seen:
                    continue
                seen.add(key)
                tried += 1
                c_mod, c_proj = cokernel(h)
                if keep is not None and c_mod.dim and not keep(c_mod):
                    continue
                rest = rec(c_mod, depth - 1)
                if rest is not None:
                    return [(fc, h, c_proj)] + rest
        return None

    steps = rec(x, max_depth)
    if steps is None:
        return None
    chain, witnesses = [], []
    q_prev = identity_map(x)
    for fc, h, p in steps:
        q_next = p @ q_prev
        z, z_inc = kernel(q_next)
        w = lift_through_mono(q_prev @ z_inc, h)
        if w is None:
            raise VerificationError("search step does not lift")
        chain.append(z_inc)
        witnesses.append(RepMap(z, fc.module, w.blocks, check=False))
        q_prev = q_next
    cert = FiltrationCert(x, chain, [fc for fc, _, _ in steps], witnesses)
    res = verify_filtration(cert)
    if not res:
        raise VerificationError(f"search produced an invalid certificate: {res.reason} at step {res.step}")
    return cert
