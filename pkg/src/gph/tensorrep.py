"""Modules over a tensor algebra Λ = a ⊗ b built from, and mapped to, factor modules."""
from __future__ import annotations

from typing import Sequence

from .errors import InputError, VerificationError
from .exactla import Mat, kron, quotient_maps
from .homology import CompleteResolution, verify_complex
from .quiveralg import BoundAlgebra, opposite_algebra, tensor_algebra, tensor_vertex
from .rep import (FreeData, Rep, RepMap, direct_sum, free_module, injective, projective, regular,
                  simple)


def _tag(lam: BoundAlgebra | None, a: BoundAlgebra, b: BoundAlgebra) -> BoundAlgebra:
    if lam is None:
        return tensor_algebra(a, b)
    if lam.tensor_of is None:
        raise InputError("algebra is not a remembered tensor product")
    fa, fb = lam.tensor_of
    if fa != a or fb != b:
        raise InputError("tensor factors do not match the modules")
    return lam


def _put(out: Mat, r0: int, c0: int, block: Mat, sign=None):
    for r, row in enumerate(block.rows):
        orow = out.rows[r0 + r]
        for c, x in enumerate(row):
            if x:
                orow[c0 + c] = orow[c0 + c] + (x if sign is None else sign * x)


def tensor_module(x: Rep, y: Rep, lam: BoundAlgebra | None = None, name: str | None = None) -> Rep:
    """x ⊗ y over a ⊗ b; vertex i*j carries x_i ⊗ y_j with x-index major."""
    a, b = x.algebra, y.algebra
    lam = _tag(lam, a, b)
    f = lam.field
    dims = {tensor_vertex(i, j): x.dims[i] * y.dims[j] for i in a.vertices for j in b.vertices}
    action = {}
    for al in a.arrows:
        for j in b.vertices:
            action[f"{al.name}*{j}"] = kron(x.action[al.name], Mat.identity(f, y.dims[j]))
    for i in a.vertices:
        for be in b.arrows:
            action[f"{i}*{be.name}"] = kron(Mat.identity(f, x.dims[i]), y.action[be.name])
    free = None
    if x.free is not None and y.free is not None:
        ny = len(y.free.gens)
        gens = [tensor_vertex(gx, gy) for gx in x.free.gens for gy in y.free.gens]
        words = {}
        for i in a.vertices:
            for j in b.vertices:
                ws = []
                for gx, wx in x.free.words[i]:
                    vx = x.free.gens[gx]
                    for gy, wy in y.free.words[j]:
                        word = tuple(f"{vx}*{be}" for be in wy) + tuple(f"{al}*{j}" for al in wx)
                        ws.append((gx * ny + gy, word))
                words[tensor_vertex(i, j)] = ws
        free = FreeData(gens, words)
    if name is None:
        name = f"{x.name or 'X'}⊗{y.name or 'Y'}"
    return Rep(lam, dims, action, name=name, free=free, check=False)


def tensor_map(f_: RepMap, g: RepMap, lam: BoundAlgebra | None = None,
               source: Rep | None = None, target: Rep | None = None) -> RepMap:
    """f ⊗ g with Kronecker blocks."""
    a, b = f_.source.algebra, g.source.algebra
    lam = _tag(lam, a, b)
    src = source if source is not None else tensor_module(f_.source, g.source, lam)
    tgt = target if target is not None else tensor_module(f_.target, g.target, lam)
    blocks = {tensor_vertex(i, j): kron(f_.blocks[i], g.blocks[j]) for i in a.vertices for j in b.vertices}
    return RepMap(src, tgt, blocks, check=False)


def functor_V_tensor(v: Rep, x: Rep) -> Rep:
    """V ⊗_b X for a right b-module V (a module over b^op) and X over a ⊗ b.

    At each a-vertex i the space is the quotient of ⊕_j V_j ⊗ X_(i,j) by the
    relations (v·β) ⊗ x − v ⊗ β x; a-arrows act through the residual action.
    """
    lam = x.algebra
    if lam.tensor_of is None:
        raise InputError("functor needs a module over a remembered tensor product")
    a, b = lam.tensor_of
    bop = opposite_algebra(b)
    if v.algebra != bop:
        raise InputError("V must be a module over the opposite of the second factor")
    f = lam.field
    bverts = b.vertices
    offs, tot = {}, {}
    for i in a.vertices:
        o = 0
        for j in bverts:
            offs[(i, j)] = o
            o += v.dims[j] * x.dims[tensor_vertex(i, j)]
        tot[i] = o
    proj, sect = {}, {}
    for i in a.vertices:
        cols = []
        for be in b.arrows:
            s, t = be.source, be.target
            xs = x.dims[tensor_vertex(i, s)]
            n_src = v.dims[t] * xs
            if n_src == 0:
                continue
            rel = Mat.zeros(f, tot[i], n_src)
            _put(rel, offs[(i, s)], 0, kron(v.action[be.name], Mat.identity(f, xs)))
            _put(rel, offs[(i, t)], 0, kron(Mat.identity(f, v.dims[t]), x.action[f"{i}*{be.name}"]), -f.one)
            cols.extend(rel.columns())
        proj[i], sect[i] = quotient_maps(Mat.from_columns(f, cols, tot[i]))
    dims = {i: proj[i].nrows for i in a.vertices}
    action = {}
    for al in a.arrows:
        s, t = al.source, al.target
        big = Mat.zeros(f, tot[t], tot[s])
        for j in bverts:
            _put(big, offs[(t, j)], offs[(s, j)],
                 kron(Mat.identity(f, v.dims[j]), x.action[f"{al.name}*{j}"]))
        action[al.name] = proj[t] @ big @ sect[s]
    return Rep(a, dims, action, name=f"{v.name or 'V'}⊗_B{x.name or 'X'}", check=False)


def simples_of_lambda(lam: BoundAlgebra) -> list[Rep]:
    a, b = _factors(lam)
    return [tensor_module(simple(a, i), simple(b, j), lam, name=f"S({tensor_vertex(i, j)})")
            for i in a.vertices for j in b.vertices]


def projectives_of_lambda(lam: BoundAlgebra) -> list[Rep]:
    a, b = _factors(lam)
    return [tensor_module(projective(a, i), projective(b, j), lam, name=f"P({tensor_vertex(i, j)})")
            for i in a.vertices for j in b.vertices]


def injectives_of_lambda(lam: BoundAlgebra) -> list[Rep]:
    a, b = _factors(lam)
    return [tensor_module(injective(a, i), injective(b, j), lam, name=f"I({tensor_vertex(i, j)})")
            for i in a.vertices for j in b.vertices]


def _factors(lam: BoundAlgebra) -> tuple[BoundAlgebra, BoundAlgebra]:
    if lam.tensor_of is None:
        raise InputError("algebra is not a remembered tensor product")
    return lam.tensor_of


def regular_tensor(lam: BoundAlgebra) -> Rep:
    a, b = _factors(lam)
    return tensor_module(regular(a), regular(b), lam, name="Λ")


# -- spliced complete resolutions -------------------------------------------------

def _total_term(lam, parts: Sequence[Rep]) -> Rep:
    if not parts:
        return free_module(lam, [])
    return direct_sum(list(parts), name="⊕".join(p.name or "?" for p in parts))


def _assemble(src: Rep, tgt: Rep, src_parts, tgt_parts, entries: dict) -> RepMap:
    """A map between direct sums from component maps entries[(tgt_idx, src_idx)]."""
    lam = src.algebra
    f = lam.field
    blocks = {}
    for v in lam.vertices:
        out = Mat.zeros(f, tgt.dims[v], src.dims[v])
        r_off, r = [], 0
        for p in tgt_parts:
            r_off.append(r)
            r += p.dims[v]
        c_off, c = [], 0
        for p in src_parts:
            c_off.append(c)
            c += p.dims[v]
        for (ti, si), (m, sign) in entries.items():
            _put(out, r_off[ti], c_off[si], m.blocks[v], sign)
        blocks[v] = out
    return RepMap(src, tgt, blocks, check=False)


def splice_complete_resolutions(cx: CompleteResolution, cy: CompleteResolution,
                                lam: BoundAlgebra | None = None) -> CompleteResolution:
    """Degreewise tensor of two complete resolutions, spliced at X⊗Y.

    Negative degrees hold the total complex of the two projective resolutions;
    positive degrees hold the total complex of the two coresolutions shifted by
    one; the splice map R^0 -> R^1 is d^0 ⊗ d^0. Signs are Koszul, (−1)^a.
    """
    a, b = cx.cocycle.algebra, cy.cocycle.algebra
    lam = _tag(lam, a, b)
    f = lam.field
    w = min(cx.window[1], cy.window[1], -cx.window[0], -cy.window[0])
    T, D = cx.terms, cx.differentials
    U, E = cy.terms, cy.differentials
    idT = {k: RepMap(t, t, {v: Mat.identity(f, t.dims[v]) for v in a.vertices}, check=False) for k, t in T.items()}
    idU = {k: RepMap(u, u, {v: Mat.identity(f, u.dims[v]) for v in b.vertices}, check=False) for k, u in U.items()}
    comps: dict[int, list[tuple[int, int]]] = {}
    for n in range(-w, w + 1):
        if n <= 0:
            comps[n] = [(p, -n - p) for p in range(0, -n + 1)]
        else:
            comps[n] = [(p, n - 1 - p) for p in range(0, n)]

    def factor_degrees(n, p, q):
        return (-p, -q) if n <= 0 else (p + 1, q + 1)

    parts, terms = {}, {}
    for n, cs in comps.items():
        ps = []
        for p, q in cs:
            da, db = factor_degrees(n, p, q)
            ps.append(tensor_module(T[da], U[db], lam, name=f"T{da}⊗U{db}"))
        parts[n] = ps
        terms[n] = _total_term(lam, ps)
    diffs = {}
    for n in range(-w, w):
        entries = {}
        tgt_index = {c: k for k, c in enumerate(comps[n + 1])}
        for si, (p, q) in enumerate(comps[n]):
            da, db = factor_degrees(n, p, q)
            if n == 0:
                ti = tgt_index[(0, 0)]
                entries[(ti, si)] = (tensor_map(D[0], E[0], lam, parts[n][si], parts[n + 1][ti]), None)
                continue
            sign = f.one if p % 2 == 0 else -f.one
            if n < 0:
                moves = [((p - 1, q), True), ((p, q - 1), False)]
            else:
                moves = [((p + 1, q), True), ((p, q + 1), False)]
            for (tp, tq), first in moves:
                ti = tgt_index.get((tp, tq))
                if ti is None:
                    continue
                if first:
                    m = tensor_map(D[da], idU[db], lam, parts[n][si], parts[n + 1][ti])
                    entries[(ti, si)] = (m, None)
                else:
                    m = tensor_map(idT[da], E[db], lam, parts[n][si], parts[n + 1][ti])
                    entries[(ti, si)] = (m, sign)
        diffs[n] = _assemble(terms[n], terms[n + 1], parts[n], parts[n + 1], entries)
    reg = regular_tensor(lam)
    checks = verify_complex(terms, diffs, -w + 1, w - 1, reg)
    if not checks["exact"]:
        raise VerificationError(f"spliced complex check failed: {checks['failures']}")
    cocycle = tensor_module(cx.cocycle, cy.cocycle, lam)
    return CompleteResolution(cocycle, (-w, w), terms, diffs, checks)


def from_b_representation(lam: BoundAlgebra, spaces: dict, maps: dict, name: str | None = None) -> Rep:
    """A Λ-module given as a representation of B over A.

    Args:
        lam: the tensor algebra A ⊗ B.
        spaces: B-vertex -> A-module.
        maps: B-arrow -> A-homomorphism, as a RepMap or a dict of per-A-vertex
            matrices; missing arrows between nonzero spaces are an error.
    """
    a, b = _factors(lam)
    f = lam.field
    dims, action = {}, {}
    for j in b.vertices:
        if j not in spaces:
            raise InputError(f"no A-module at B-vertex {j!r}")
        xj = spaces[j]
        if xj.algebra != a:
            raise InputError(f"space at {j!r} is not a module over the first factor")
        for i in a.vertices:
            dims[tensor_vertex(i, j)] = xj.dims[i]
        for al in a.arrows:
            action[f"{al.name}*{j}"] = xj.action[al.name]
    for be in b.arrows:
        src, tgt = spaces[be.source], spaces[be.target]
        h = maps.get(be.name)
        if h is None:
            h = {i: Mat.zeros(f, tgt.dims[i], src.dims[i]) for i in a.vertices}
            if any(src.dims[i] and tgt.dims[i] for i in a.vertices):
                raise InputError(f"missing map for B-arrow {be.name!r}")
        blocks = h.blocks if isinstance(h, RepMap) else h
        hm = RepMap(src, tgt, blocks, check=False)
        if not hm.is_homomorphism():
            raise InputError(f"map on B-arrow {be.name!r} is not an A-homomorphism")
        for i in a.vertices:
            action[f"{i}*{be.name}"] = blocks[i]
    return Rep(lam, dims, action, name=name, check=True)
