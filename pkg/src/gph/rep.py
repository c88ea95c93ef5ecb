"""Modules as quiver representations and the basic operations on them."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import InputError
from .exactla import (Mat, block_diag, column_space, kernel_basis, left_inverse, quotient_maps, rank,
                      rref)
from .quiveralg import BoundAlgebra, opposite_algebra

ISO_RANDOM_TRIALS = 64
ISO_SEED = 20240601
ISO_GRID_LIMIT = 20000


class FreeData:
    """Generator bookkeeping for a direct sum of indecomposable projectives.

    Every basis vector at vertex v is ``word · gen`` for a generator ``gen`` and a
    normal-form path ``word`` (traversal order) from the generator's vertex to v.
    """

    def __init__(self, gens: Sequence[str], words: dict[str, list[tuple[int, tuple]]]):
        self.gens = tuple(gens)
        self.words = words
        self.gen_pos = []
        for g, v in enumerate(self.gens):
            self.gen_pos.append(words[v].index((g, ())))

    def multiplicities(self, vertices: Sequence[str]) -> dict[str, int]:
        return {v: sum(1 for g in self.gens if g == v) for v in vertices}


class Rep:
    """A finite-dimensional left module given by per-vertex spaces and per-arrow matrices.

    Args:
        algebra: the bound quiver algebra.
        dims: vertex -> dimension (missing vertices are 0).
        action: arrow name -> matrix of shape dim(target) x dim(source);
            missing arrows act by zero.
        name: optional label used in reports.
        free: generator data when the module is a standard sum of projectives.
        check: validate shapes, relations and nilpotency.
    """

    def __init__(self, algebra: BoundAlgebra, dims: dict, action: dict | None = None,
                 name: str | None = None, free: FreeData | None = None, check: bool = True):
        self.algebra = algebra
        f = algebra.field
        for v in dims:
            if not algebra.quiver.has_vertex(v):
                raise InputError(f"unknown vertex {v!r}")
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise InputError("negative dimension")
        action = dict(action or {})
        for name_ in action:
            algebra.quiver.arrow(name_)
        self.action = {}
        for a in algebra.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            mat = action.get(a.name)
            if mat is None:
                mat = Mat.zeros(f, *shape)
            elif mat.shape != shape:
                raise InputError(f"arrow {a.name!r}: matrix shape {mat.shape}, expected {shape}")
            self.action[a.name] = mat
        self.name = name
        self.free = free
        self._paths: dict = {}
        self._key = None
        if check:
            self.check()

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.dim == 0

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.algebra.key(), self.dim_vector(),
                         tuple(self.action[a.name].key() for a in self.algebra.arrows))
        return self._key

    def __repr__(self):
        label = self.name or "Rep"
        return f"{label}{self.dim_vector()}"

    def path_matrix(self, word: tuple, source: str) -> Mat:
        """Action of the traversal-order path ``word`` starting at ``source``."""
        key = (source, word)
        hit = self._paths.get(key)
        if hit is not None:
            return hit
        if not word:
            out = Mat.identity(self.field, self.dims[source])
        else:
            prev = self.path_matrix(word[:-1], source)
            out = self.action[word[-1]] @ prev
        self._paths[key] = out
        return out

    def element_matrix(self, elem: dict, s: str, t: str) -> Mat:
        """Action of the e_t·elem·e_s part of an algebra element, as a map X_s -> X_t."""
        a = self.algebra
        out = Mat.zeros(self.field, self.dims[t], self.dims[s])
        for i in a.basis_between(s, t):
            c = elem.get(i)
            if c:
                out = out + self.path_matrix(a.basis[i][1], s).scale(c)
        return out

    def check(self) -> None:
        a = self.algebra
        q = a.quiver
        for rel in a.relations:
            some = next(iter(rel))
            s, t = some[0], q.target(some)
            acc = Mat.zeros(self.field, self.dims[t], self.dims[s])
            for path, c in rel.items():
                acc = acc + self.path_matrix(path[1], s).scale(c)
            if not acc.is_zero():
                raise InputError(f"module {self.name or ''} violates a relation at {s}->{t}")
        layer = {v: Mat.identity(self.field, self.dims[v]) for v in a.vertices}
        for _ in range(a.nil_length):
            nxt = {}
            for v in a.vertices:
                cols = []
                for arr in q.in_arrows[v]:
                    img = self.action[arr.name] @ layer[arr.source]
                    cols.extend(img.columns())
                span = Mat.from_columns(self.field, cols, self.dims[v])
                nxt[v] = column_space(span) if cols else Mat.zeros(self.field, self.dims[v], 0)
            layer = nxt
        if any(m.ncols for m in layer.values()):
            raise InputError(f"module {self.name or ''}: long paths do not act nilpotently")


class RepMap:
    """A module homomorphism given by per-vertex blocks.

    Args:
        source, target: the modules.
        blocks: vertex -> matrix of shape target.dims[v] x source.dims[v].
        check: verify the commuting condition for every arrow.
    """

    def __init__(self, source: Rep, target: Rep, blocks: dict, check: bool = True):
        if source.algebra is not target.algebra and source.algebra != target.algebra:
            raise InputError("map between modules over different algebras")
        self.source = source
        self.target = target
        f = source.field
        self.blocks = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            b = blocks.get(v)
            if b is None:
                b = Mat.zeros(f, *shape)
            elif b.shape != shape:
                raise InputError(f"block at {v!r} has shape {b.shape}, expected {shape}")
            self.blocks[v] = b
        if check and not self.is_homomorphism():
            raise InputError("blocks do not commute with the arrow actions")

    def is_homomorphism(self) -> bool:
        for a in self.source.algebra.arrows:
            lhs = self.target.action[a.name] @ self.blocks[a.source]
            rhs = self.blocks[a.target] @ self.source.action[a.name]
            if lhs != rhs:
                return False
        return True

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """Composition: (self @ other)(x) = self(other(x))."""
        return RepMap(other.source, self.target,
                      {v: self.blocks[v] @ other.blocks[v] for v in self.blocks}, check=False)

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target,
                      {v: self.blocks[v] + other.blocks[v] for v in self.blocks}, check=False)

    def __sub__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target,
                      {v: self.blocks[v] - other.blocks[v] for v in self.blocks}, check=False)

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, {v: b.scale(c) for v, b in self.blocks.items()}, check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def ranks(self) -> dict[str, int]:
        return {v: rank(b) for v, b in self.blocks.items()}

    def is_injective(self) -> bool:
        return all(r == self.source.dims[v] for v, r in self.ranks().items())

    def is_surjective(self) -> bool:
        return all(r == self.target.dims[v] for v, r in self.ranks().items())

    def is_iso(self) -> bool:
        return self.source.dim_vector() == self.target.dim_vector() and self.is_injective()


# -- constructors -----------------------------------------------------------

def zero_rep(algebra: BoundAlgebra) -> Rep:
    return Rep(algebra, {}, name="0", free=FreeData([], {v: [] for v in algebra.vertices}), check=False)


def identity_map(m: Rep) -> RepMap:
    return RepMap(m, m, {v: Mat.identity(m.field, d) for v, d in m.dims.items()}, check=False)


def zero_map(m: Rep, n: Rep) -> RepMap:
    return RepMap(m, n, {}, check=False)


def linear_combination(maps: Sequence[RepMap], coeffs: Sequence, source: Rep, target: Rep) -> RepMap:
    out = zero_map(source, target)
    for f, c in zip(maps, coeffs):
        if c:
            out = out + f.scale(c)
    return out


def simple(algebra: BoundAlgebra, i: str) -> Rep:
    if not algebra.quiver.has_vertex(i):
        raise InputError(f"unknown vertex {i!r}")
    return Rep(algebra, {i: 1}, name=f"S({i})", check=False)


def free_module(algebra: BoundAlgebra, gens: Sequence[str], name: str | None = None) -> Rep:
    """⊕ projective(g) over the generator vertices, with its generator data."""
    f = algebra.field
    for g in gens:
        if not algebra.quiver.has_vertex(g):
            raise InputError(f"unknown vertex {g!r}")
    words = {v: [] for v in algebra.vertices}
    pos = {}
    for gi, g in enumerate(gens):
        for v in algebra.vertices:
            for b in algebra.basis_between(g, v):
                pos[(gi, b)] = (v, len(words[v]))
                words[v].append((gi, algebra.basis[b][1]))
    dims = {v: len(words[v]) for v in algebra.vertices}
    action = {}
    for arr in algebra.arrows:
        s, t = arr.source, arr.target
        m = Mat.zeros(f, dims[t], dims[s])
        arrow_elem = algebra.reduce_path((s, (arr.name,)))
        (ai, _), = arrow_elem.items()
        for col, (gi, word) in enumerate(words[s]):
            b = algebra.index[(gens[gi], word)]
            for k, c in algebra.mul_basis(ai, b).items():
                m.rows[pos[(gi, k)][1]][col] = c
        action[arr.name] = m
    if name is None:
        name = "⊕".join(f"P({g})" for g in gens) if gens else "0"
    return Rep(algebra, dims, action, name=name, free=FreeData(gens, words), check=False)


def projective(algebra: BoundAlgebra, i: str) -> Rep:
    """The left ideal Λe_i: normal-form paths starting at i."""
    return free_module(algebra, [i], name=f"P({i})")


def regular(algebra: BoundAlgebra) -> Rep:
    return free_module(algebra, list(algebra.vertices), name="regular")


def injective(algebra: BoundAlgebra, i: str) -> Rep:
    m = dual(projective(opposite_algebra(algebra), i))
    m.name = f"I({i})"
    return m


def dual(m: Rep) -> Rep:
    """D = Hom_k(-, k): a module over the opposite algebra with transposed actions."""
    op = opposite_algebra(m.algebra)
    return Rep(op, dict(m.dims), {k: v.T for k, v in m.action.items()},
               name=f"D({m.name})" if m.name else None, check=False)


def direct_sum(ms: Sequence[Rep], name: str | None = None) -> Rep:
    if not ms:
        raise InputError("direct sum of an empty list")
    a = ms[0].algebra
    for m in ms[1:]:
        if m.algebra is not a and m.algebra != a:
            raise InputError("direct sum over different algebras")
    f = a.field
    dims = {v: sum(m.dims[v] for m in ms) for v in a.vertices}
    action = {arr.name: block_diag([m.action[arr.name] for m in ms], f) for arr in a.arrows}
    free = None
    if all(m.free is not None for m in ms):
        gens = []
        words = {v: [] for v in a.vertices}
        for m in ms:
            off = len(gens)
            gens.extend(m.free.gens)
            for v in a.vertices:
                words[v].extend((g + off, w) for g, w in m.free.words[v])
        free = FreeData(gens, words)
    if name is None:
        name = "⊕".join(m.name or "?" for m in ms)
    return Rep(a, dims, action, name=name, free=free, check=False)


def direct_sum_maps(ms: Sequence[Rep], total: Rep) -> tuple[list[RepMap], list[RepMap]]:
    """Canonical injections into and projections out of ``total = direct_sum(ms)``."""
    f = total.field
    incs, projs = [], []
    offs = {v: 0 for v in total.algebra.vertices}
    for m in ms:
        ib, pb = {}, {}
        for v in total.algebra.vertices:
            i = Mat.zeros(f, total.dims[v], m.dims[v])
            for k in range(m.dims[v]):
                i.rows[offs[v] + k][k] = f.one
            ib[v] = i
            pb[v] = i.T
            offs[v] += m.dims[v]
        incs.append(RepMap(m, total, ib, check=False))
        projs.append(RepMap(total, m, pb, check=False))
    return incs, projs


def map_from_generators(p: Rep, n: Rep, images: Sequence[Sequence]) -> RepMap:
    """The map from a free module sending generator g to ``images[g]`` in n at the generator's vertex."""
    if p.free is None:
        raise InputError("source is not a free module with generator data")
    f = n.field
    blocks = {}
    for v in p.algebra.vertices:
        cols = []
        for gi, word in p.free.words[v]:
            gv = p.free.gens[gi]
            cols.append(n.path_matrix(word, gv).apply(list(images[gi])))
        blocks[v] = Mat.from_columns(f, cols, n.dims[v])
    return RepMap(p, n, blocks, check=False)


# -- hom spaces, kernels, cokernels -------------------------------------------

def hom_space(m: Rep, n: Rep) -> list[RepMap]:
    """A basis of Hom(m, n), canonical for the given bases of m and n."""
    a = m.algebra
    if n.algebra is not a and n.algebra != a:
        raise InputError("hom space between modules over different algebras")
    f = a.field
    offsets = {}
    total = 0
    for v in a.vertices:
        offsets[v] = total
        total += n.dims[v] * m.dims[v]
    if total == 0:
        return []
    eqs = []
    z = f.zero
    for arr in a.arrows:
        s, t = arr.source, arr.target
        na, ma = n.action[arr.name], m.action[arr.name]
        ms_, nt = m.dims[s], n.dims[t]
        ns_, mt = n.dims[s], m.dims[t]
        if ms_ == 0 or nt == 0:
            continue
        for r in range(nt):
            for c in range(ms_):
                row = [z] * total
                nz = False
                # (N_a f_s)[r][c] = sum_k N_a[r][k] f_s[k][c]
                for k in range(ns_):
                    x = na.rows[r][k]
                    if x:
                        idx = offsets[s] + k * ms_ + c
                        row[idx] = row[idx] + x
                        nz = True
                # (f_t M_a)[r][c] = sum_k f_t[r][k] M_a[k][c]
                for k in range(mt):
                    x = ma.rows[k][c]
                    if x:
                        idx = offsets[t] + r * mt + k
                        row[idx] = row[idx] - x
                        nz = True
                if nz:
                    eqs.append(row)
    if eqs:
        basis = kernel_basis(Mat(f, eqs, total))
    else:
        basis = []
        for i in range(total):
            vec = [z] * total
            vec[i] = f.one
            basis.append(vec)
    out = []
    for vec in basis:
        blocks = {}
        for v in a.vertices:
            rows_, cols_ = n.dims[v], m.dims[v]
            o = offsets[v]
            blocks[v] = Mat(f, [vec[o + r * cols_: o + (r + 1) * cols_] for r in range(rows_)], cols_)
        out.append(RepMap(m, n, blocks, check=False))
    return out


def _kernel_columns(mat: Mat) -> tuple[Mat, Mat]:
    """Kernel basis as columns plus a coordinate map (left inverse) on the kernel."""
    f = mat.field
    basis = kernel_basis(mat)
    n = mat.ncols
    k = Mat.from_columns(f, basis, n)
    red, piv = rref(mat)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    coords = Mat.zeros(f, len(free), n)
    for i, c in enumerate(free):
        coords.rows[i][c] = f.one
    return k, coords


def submodule(m: Rep, bases: dict[str, Mat], name: str | None = None,
              coords: dict[str, Mat] | None = None) -> tuple[Rep, RepMap]:
    """The submodule spanned per vertex by the columns of ``bases`` (must be invariant)."""
    f = m.field
    a = m.algebra
    if coords is None:
        coords = {v: left_inverse(bases[v]) for v in a.vertices}
    dims = {v: bases[v].ncols for v in a.vertices}
    action = {}
    for arr in a.arrows:
        img = m.action[arr.name] @ bases[arr.source]
        action[arr.name] = coords[arr.target] @ img
    sub = Rep(a, dims, action, name=name, check=False)
    inc = RepMap(sub, m, bases, check=False)
    return sub, inc


def kernel(f_: RepMap) -> tuple[Rep, RepMap]:
    a = f_.source.algebra
    bases, coords = {}, {}
    for v in a.vertices:
        bases[v], coords[v] = _kernel_columns(f_.blocks[v])
    return submodule(f_.source, bases, coords=coords)


def cokernel(f_: RepMap) -> tuple[Rep, RepMap]:
    a = f_.source.algebra
    n = f_.target
    projs, sects = {}, {}
    for v in a.vertices:
        projs[v], sects[v] = quotient_maps(f_.blocks[v])
    dims = {v: projs[v].nrows for v in a.vertices}
    action = {arr.name: projs[arr.target] @ n.action[arr.name] @ sects[arr.source] for arr in a.arrows}
    q = Rep(a, dims, action, check=False)
    return q, RepMap(n, q, projs, check=False)


def image(f_: RepMap) -> tuple[Rep, RepMap, RepMap]:
    a = f_.source.algebra
    bases = {v: column_space(f_.blocks[v]) for v in a.vertices}
    coords = {v: left_inverse(bases[v]) for v in a.vertices}
    im, inc = submodule(f_.target, bases, coords=coords)
    proj = RepMap(f_.source, im, {v: coords[v] @ f_.blocks[v] for v in a.vertices}, check=False)
    return im, inc, proj


def lift_through_mono(g: RepMap, i: RepMap) -> RepMap | None:
    """h with i ∘ h = g, for a monomorphism i whose image contains the image of g."""
    from .exactla import solve_many

    blocks = {}
    for v in g.source.algebra.vertices:
        h = solve_many(i.blocks[v], g.blocks[v])
        if h is None:
            return None
        blocks[v] = h
    return RepMap(g.source, i.source, blocks, check=False)


# -- isomorphism and indecomposability ---------------------------------------

@dataclass
class IsoResult:
    isomorphic: bool
    witness: RepMap | None = None
    method: str = ""

    def __bool__(self):
        return self.isomorphic


def _blocks_invertible(h: RepMap) -> bool:
    for v, b in h.blocks.items():
        if b.nrows and rank(b) != b.nrows:
            return False
    return True


def is_isomorphic(m: Rep, n: Rep, seed: int = ISO_SEED) -> IsoResult:
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise InputError("isomorphism test across different algebras")
    if m.dim_vector() != n.dim_vector():
        return IsoResult(False, method="dimension vectors differ")
    if m.dim == 0:
        return IsoResult(True, zero_map(m, n), method="zero")
    hom = hom_space(m, n)
    if not hom:
        return IsoResult(False, method="no homomorphisms")
    d = len(hom)
    if len(hom_space(m, m)) != d or len(hom_space(n, n)) != d or len(hom_space(n, m)) != d:
        return IsoResult(False, method="hom dimensions differ")
    f = m.field
    rng = random.Random(seed)
    for _ in range(ISO_RANDOM_TRIALS):
        coeffs = [f(rng.randint(-1000, 1000)) for _ in hom]
        h = linear_combination(hom, coeffs, m, n)
        if _blocks_invertible(h):
            return IsoResult(True, h, method="random combination")
    tried = 0
    for weight in range(1, d + 1):
        for support in itertools.combinations(range(d), weight):
            for signs in itertools.product((1, -1), repeat=weight):
                tried += 1
                if tried > ISO_GRID_LIMIT:
                    return IsoResult(False, method="no invertible combination found")
                coeffs = [f.zero] * d
                for k, s in zip(support, signs):
                    coeffs[k] = f(s)
                h = linear_combination(hom, coeffs, m, n)
                if _blocks_invertible(h):
                    return IsoResult(True, h, method="grid combination")
    return IsoResult(False, method="exhaustive grid")


@dataclass
class IndecResult:
    value: bool | None
    reason: str
    end_dim: int = 0
    top_dim: int | None = None
    witness: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return bool(self.value)


def _endo_trace(h: RepMap):
    f = h.source.field
    t = f.zero
    for b in h.blocks.values():
        for i in range(b.nrows):
            t = t + b.rows[i][i]
    return t


def _radical_by_trace(basis: list[RepMap]) -> list[list]:
    f = basis[0].source.field
    n = len(basis)
    gram = Mat(f, [[_endo_trace(basis[i] @ basis[j]) for j in range(n)] for i in range(n)], n)
    return kernel_basis(gram)


def _charpoly_factors(h: RepMap):
    import sympy

    x = sympy.Symbol("x")
    f = h.source.field
    factors = set()
    for b in h.blocks.values():
        if b.nrows == 0:
            continue
        sm = sympy.Matrix([[sympy.Rational(str(e)) for e in r] for r in b.rows])
        poly = sm.charpoly(x)
        if f.characteristic:
            p = sympy.Poly(poly.as_expr(), x, modulus=f.characteristic)
        else:
            p = sympy.Poly(poly.as_expr(), x, domain="QQ")
        for fac, _ in p.factor_list()[1]:
            factors.add(tuple(int(c) if f.characteristic else sympy.Rational(c) for c in fac.monic().all_coeffs()))
    return factors


def _eval_poly(h: RepMap, coeffs) -> RepMap:
    f = h.source.field
    m = h.source
    out = zero_map(m, m)
    for c in coeffs:
        out = (out @ h) + identity_map(m).scale(f(str(c)) if not f.characteristic else f(int(c)))
    return out


def _fitting_split(h: RepMap) -> dict | None:
    factors = _charpoly_factors(h)
    if len(factors) < 2:
        return None
    fac = sorted(factors, key=str)[0]
    psi = _eval_poly(h, fac)
    m = h.source
    power = identity_map(m)
    for _ in range(max(m.dims.values())):
        power = power @ psi
    kdims = {v: m.dims[v] - rank(b) for v, b in power.blocks.items()}
    if 0 < sum(kdims.values()) < m.dim:
        return {"fitting_kernel_dims": [kdims[v] for v in m.algebra.vertices],
                "fitting_image_dims": [m.dims[v] - kdims[v] for v in m.algebra.vertices]}
    return None


def is_indecomposable(m: Rep, seed: int = ISO_SEED) -> IndecResult:
    """Decide indecomposability through the local structure of End(m).

    Over Q (and over F_p with p above the module dimension) the radical of
    End(m) is the kernel of the trace form; dim End/rad = 1 certifies
    indecomposability.  Decomposability is certified by a Fitting
    decomposition of some endomorphism.
    """
    if m.dim == 0:
        return IndecResult(False, "zero module")
    basis = hom_space(m, m)
    n = len(basis)
    if n == 1:
        return IndecResult(True, "End is one-dimensional", end_dim=1, top_dim=1)
    p = m.field.characteristic
    top = None
    if p == 0 or p > m.dim:
        rad = _radical_by_trace(basis)
        top = n - len(rad)
        if top == 1:
            return IndecResult(True, "End/rad End is one-dimensional", end_dim=n, top_dim=1)
    f = m.field
    candidates = list(basis)
    candidates.extend(basis[i] + basis[j] for i in range(n) for j in range(i + 1, n))
    rng = random.Random(seed)
    for _ in range(16):
        candidates.append(linear_combination(basis, [f(rng.randint(-50, 50)) for _ in basis], m, m))
    for h in candidates:
        split = _fitting_split(h)
        if split is not None:
            return IndecResult(False, "Fitting decomposition of an endomorphism", end_dim=n, top_dim=top,
                               witness=split)
    return IndecResult(None, "not split-local; indecomposability undecided", end_dim=n, top_dim=top)


def splitting_field_check(algebra: BoundAlgebra) -> bool:
    """Every simple has a one-dimensional endomorphism ring."""
    return all(len(hom_space(simple(algebra, v), simple(algebra, v))) == 1 for v in algebra.vertices)


# -- tensor factors ------------------------------------------------------------

def restrict(x: Rep, side: str) -> Rep:
    """Restriction of a module over a⊗b to the factor ``side`` ("A" or "B")."""
    lam = x.algebra
    if lam.tensor_of is None:
        raise InputError("restriction needs a module over a remembered tensor product")
    a, b = lam.tensor_of
    f = lam.field
    if side == "B":
        dims = {j: sum(x.dims[f"{i}*{j}"] for i in a.vertices) for j in b.vertices}
        action = {be.name: block_diag([x.action[f"{i}*{be.name}"] for i in a.vertices], f) for be in b.arrows}
        return Rep(b, dims, action, name=f"{x.name or 'X'}|B", check=False)
    if side == "A":
        dims = {i: sum(x.dims[f"{i}*{j}"] for j in b.vertices) for i in a.vertices}
        action = {al.name: block_diag([x.action[f"{al.name}*{j}"] for j in b.vertices], f) for al in a.arrows}
        return Rep(a, dims, action, name=f"{x.name or 'X'}|A", check=False)
    raise InputError(f"side must be 'A' or 'B', got {side!r}")

