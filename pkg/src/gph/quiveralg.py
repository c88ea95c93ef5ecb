"""Bound quiver algebras: normal-form path bases, opposites and tensor products.

Paths are stored as ``(source_vertex, arrows)`` with the arrow names in
traversal order.  As algebra elements, the product ``p * q`` means "first q,
then p", so the traversal path ``(s, ("a", "g"))`` is the element written
``g a`` in function order.
"""
from __future__ import annotations

from typing import Iterable

from .errors import InputError, InternalError, NotAdmissibleError
from .exactla import Field

Path = tuple  # (source vertex, tuple of arrow names)

DEFAULT_MAX_PATH_LENGTH = 30


class Arrow:
    __slots__ = ("name", "source", "target")

    def __init__(self, name: str, source: str, target: str):
        self.name = name
        self.source = source
        self.target = target

    def __repr__(self):
        return f"Arrow({self.name}: {self.source}->{self.target})"

    def __eq__(self, other):
        return isinstance(other, Arrow) and (self.name, self.source, self.target) == (
            other.name, other.source, other.target)

    def __hash__(self):
        return hash((self.name, self.source, self.target))


class Quiver:
    """Finite quiver with named vertices and arrows.

    Args:
        vertices: vertex names, in a fixed order.
        arrows: (name, source, target) triples.
    """

    def __init__(self, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        vset = set(self.vertices)
        self.arrows = tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows)
        self._arrow = {}
        for a in self.arrows:
            if a.name in self._arrow:
                raise InputError(f"duplicate arrow name {a.name!r}")
            if a.name in vset:
                raise InputError(f"arrow name {a.name!r} clashes with a vertex name")
            if a.source not in vset or a.target not in vset:
                raise InputError(f"arrow {a.name!r} references an undeclared vertex")
            self._arrow[a.name] = a
        self.out_arrows = {v: [a for a in self.arrows if a.source == v] for v in self.vertices}
        self.in_arrows = {v: [a for a in self.arrows if a.target == v] for v in self.vertices}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow[name]
        except KeyError:
            raise InputError(f"unknown arrow {name!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self.vertices

    def target(self, path: Path) -> str:
        v = path[0]
        for name in path[1]:
            a = self.arrow(name)
            if a.source != v:
                raise InputError(f"path {path_str(path)} is not composable at arrow {name!r}")
            v = a.target
        return v

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows])

    def paths_of_length(self, n: int) -> list[Path]:
        layer = [(v, ()) for v in self.vertices]
        ends = {(v, ()): v for v in self.vertices}
        for _ in range(n):
            nxt = []
            new_ends = {}
            for p in layer:
                for a in self.out_arrows[ends[p]]:
                    q = (p[0], p[1] + (a.name,))
                    nxt.append(q)
                    new_ends[q] = a.target
            layer, ends = nxt, new_ends
        return layer

    def key(self) -> tuple:
        return (self.vertices, tuple((a.name, a.source, a.target) for a in self.arrows))


def path_str(path: Path) -> str:
    if not path[1]:
        return f"e_{path[0]}"
    return ".".join(path[1])


def _order(path: Path):
    return (len(path[1]), path[1], path[0])


def reverse_path(quiver: Quiver, path: Path) -> Path:
    return (quiver.target(path), tuple(reversed(path[1])))


class _Echelon:
    """Incremental echelon form of sparse vectors keyed by paths (largest path leads)."""

    def __init__(self):
        self.rows: dict[Path, dict] = {}

    def reduce(self, vec: dict) -> dict:
        v = {p: c for p, c in vec.items() if c}
        rows = self.rows
        while True:
            lead = None
            for p in v:
                if p in rows and (lead is None or _order(p) > _order(lead)):
                    lead = p
            if lead is None:
                return v
            c = v[lead]
            for p, d in rows[lead].items():
                nv = v.get(p, 0) - c * d
                if nv:
                    v[p] = nv
                else:
                    v.pop(p, None)

    def insert(self, vec: dict) -> dict | None:
        v = self.reduce(vec)
        if not v:
            return None
        lead = max(v, key=_order)
        inv = 1 / v[lead]
        v = {p: c * inv for p, c in v.items()}
        self.rows[lead] = v
        return v


class BoundAlgebra:
    """kQ/I for an admissible ideal I, with a normal-form path basis.

    Use ``build_algebra`` rather than calling the constructor directly.
    """

    def __init__(self, field: Field, quiver: Quiver, relations: list[dict], basis: list[Path],
                 reductions: dict, nil_length: int, name: str | None = None):
        self.field = field
        self.quiver = quiver
        self.relations = relations
        self.basis = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self._reductions = reductions
        self.nil_length = nil_length
        self.name = name or "algebra"
        self.tensor_of: tuple | None = None
        self.vertex_pairs: dict[str, tuple[str, str]] | None = None
        self._opposite: BoundAlgebra | None = None
        self._mul_cache: dict = {}
        self._key = None
        self.basis_target = [quiver.target(p) for p in basis]
        self._from = {v: [i for i, p in enumerate(basis) if p[0] == v] for v in quiver.vertices}
        self._between = {}
        for i, p in enumerate(basis):
            self._between.setdefault((p[0], self.basis_target[i]), []).append(i)

    # -- structure ------------------------------------------------------
    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def idempotent(self, v: str) -> int:
        return self.index[(v, ())]

    def radical_basis(self) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p[1]]

    def basis_from(self, v: str) -> list[int]:
        """Basis paths starting at v (a basis of the left ideal at e_v)."""
        return self._from[v]

    def basis_between(self, s: str, t: str) -> list[int]:
        return self._between.get((s, t), [])

    def key(self) -> tuple:
        if self._key is None:
            red = tuple(sorted((p, tuple(sorted(v.items()))) for p, v in self._reductions.items()))
            self._key = (self.field.characteristic, self.quiver.key(), tuple(self.basis), red)
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, BoundAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"BoundAlgebra({self.name}, dim={self.dim})"

    # -- normal forms ---------------------------------------------------
    def reduce_path(self, path: Path) -> dict[int, object]:
        """Normal form of a path as {basis index: coefficient}."""
        if len(path[1]) >= self.nil_length:
            return {}
        i = self.index.get(path)
        if i is not None:
            return {i: self.field.one}
        red = self._reductions.get(path)
        if red is None:
            raise InternalError(f"path {path_str(path)} has no normal form")
        return red

    def mul_basis(self, i: int, j: int) -> dict[int, object]:
        """Product b_i * b_j (b_j first, then b_i)."""
        key = (i, j)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        p, q = self.basis[i], self.basis[j]
        if self.basis_target[j] != p[0]:
            out = {}
        else:
            out = self.reduce_path((q[0], q[1] + p[1]))
        self._mul_cache[key] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul_basis(i, j).items():
                    nv = out.get(k, 0) + a * b * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def path_element(self, arrows: Iterable[str], source: str | None = None) -> dict:
        arrows = tuple(arrows)
        if source is None:
            if not arrows:
                raise InputError("trivial path needs a vertex")
            source = self.quiver.arrow(arrows[0]).source
        path = (source, arrows)
        self.quiver.target(path)
        return self.reduce_path(path)

    def multiplication_table(self) -> list[list[dict]]:
        n = self.dim
        return [[self.mul_basis(i, j) for j in range(n)] for i in range(n)]


def _check_relation(quiver: Quiver, rel: dict) -> None:
    if not rel:
        raise InputError("empty relation")
    ends = set()
    for path, coef in rel.items():
        if len(path[1]) < 2:
            raise NotAdmissibleError(
                f"relation summand {path_str(path)} has length {len(path[1])} < 2 (not admissible)")
        ends.add((path[0], quiver.target(path)))
    if len(ends) != 1:
        raise InputError("relation summands are not parallel paths")


def build_algebra(field: Field, quiver: Quiver, relations: list[dict],
                  max_path_length: int = DEFAULT_MAX_PATH_LENGTH, name: str | None = None) -> BoundAlgebra:
    """Normalize kQ/(relations) to a path basis.

    Args:
        field: coefficient field.
        quiver: the quiver.
        relations: each relation maps paths to coefficients.
        max_path_length: give up if no length up to this bound has every
            path of that length in the ideal.
        name: optional display name.
    """
    rels = []
    for rel in relations:
        clean = {p: field(c) for p, c in rel.items() if field(c)}
        _check_relation(quiver, rel)
        if clean:
            rels.append(clean)

    all_paths: list[Path] = []
    for n in range(0, max_path_length + 1):
        layer = quiver.paths_of_length(n)
        all_paths.extend(layer)
        if n == 0:
            continue
        ech = _saturate(quiver, rels, n)
        if all(not ech.reduce({p: field.one}) for p in layer):
            basis = sorted((p for p in all_paths if len(p[1]) < n and p not in ech.rows), key=_order)
            reductions = {}
            for p in ech.rows:
                if len(p[1]) < n:
                    reductions[p] = {}
            algebra_basis = basis
            index = {p: i for i, p in enumerate(algebra_basis)}
            for p in list(reductions):
                red = ech.reduce({p: field.one})
                reductions[p] = {index[q]: c for q, c in red.items()}
            return BoundAlgebra(field, quiver, rels, algebra_basis, reductions, n, name)
        if not layer:
            break
    raise NotAdmissibleError(
        f"dimension not certified finite: some path of length {max_path_length} survives the relations")


def _saturate(quiver: Quiver, rels: list[dict], n: int) -> _Echelon:
    """The two-sided ideal generated by rels inside kQ / (paths of length > n)."""
    ech = _Echelon()
    queue = [dict((p, c) for p, c in r.items() if len(p[1]) <= n) for r in rels]
    while queue:
        vec = queue.pop()
        if not vec:
            continue
        v = ech.insert(vec)
        if v is None:
            continue
        some = next(iter(v))
        src, tgt = some[0], quiver.target(some)
        for a in quiver.out_arrows[tgt]:
            queue.append({(p[0], p[1] + (a.name,)): c for p, c in v.items() if len(p[1]) < n})
        for a in quiver.in_arrows[src]:
            queue.append({(a.source, (a.name,) + p[1]): c for p, c in v.items() if len(p[1]) < n})
    return ech


def opposite_algebra(a: BoundAlgebra) -> BoundAlgebra:
    """Arrows and relations reversed; right a-modules are left modules over this."""
    if a._opposite is not None:
        return a._opposite
    if a.tensor_of is not None:
        op = tensor_algebra(opposite_algebra(a.tensor_of[0]), opposite_algebra(a.tensor_of[1]))
    else:
        q = a.quiver
        rels = [{reverse_path(q, p): c for p, c in r.items()} for r in a.relations]
        op = build_algebra(a.field, q.opposite(), rels, max(a.nil_length, 1), name=f"{a.name}^op")
    op._opposite = a
    a._opposite = op
    return op


def tensor_vertex(i: str, j: str) -> str:
    return f"{i}*{j}"


_TENSOR_CACHE: dict = {}


def tensor_algebra(a: BoundAlgebra, b: BoundAlgebra) -> BoundAlgebra:
    """Presentation of a ⊗ b: vertex pairs, lifted relations and commutativity relations."""
    if a.field != b.field:
        raise InputError("tensor factors live over different fields")
    cache_key = (a.key(), b.key())
    hit = _TENSOR_CACHE.get(cache_key)
    if hit is not None and hit.tensor_of[0] is a and hit.tensor_of[1] is b:
        return hit
    from .rep import splitting_field_check

    for alg in (a, b):
        if not splitting_field_check(alg):
            raise InputError(f"{alg.name}: the field is not a splitting field")
    verts = [tensor_vertex(i, j) for i in a.vertices for j in b.vertices]
    arrows = []
    for al in a.arrows:
        for j in b.vertices:
            arrows.append((f"{al.name}*{j}", tensor_vertex(al.source, j), tensor_vertex(al.target, j)))
    for i in a.vertices:
        for be in b.arrows:
            arrows.append((f"{i}*{be.name}", tensor_vertex(i, be.source), tensor_vertex(i, be.target)))
    rels = []
    for r in a.relations:
        for j in b.vertices:
            rels.append({(tensor_vertex(p[0], j), tuple(f"{x}*{j}" for x in p[1])): c for p, c in r.items()})
    for r in b.relations:
        for i in a.vertices:
            rels.append({(tensor_vertex(i, p[0]), tuple(f"{i}*{x}" for x in p[1])): c for p, c in r.items()})
    one = a.field.one
    for al in a.arrows:
        for be in b.arrows:
            # (α, e_t(β)) after (e_s(α), β)  minus  (e_t(α), β) after (α, e_s(β))
            src = tensor_vertex(al.source, be.source)
            p1 = (src, (f"{al.source}*{be.name}", f"{al.name}*{be.target}"))
            p2 = (src, (f"{al.name}*{be.source}", f"{al.target}*{be.name}"))
            rels.append({p1: one, p2: -one})
    q = Quiver(verts, arrows)
    bound = a.nil_length + b.nil_length
    lam = build_algebra(a.field, q, rels, max(bound, DEFAULT_MAX_PATH_LENGTH), name=f"{a.name}⊗{b.name}")
    if lam.dim != a.dim * b.dim:
        raise InternalError(f"tensor dimension {lam.dim} != {a.dim}·{b.dim}")
    lam.tensor_of = (a, b)
    lam.vertex_pairs = {tensor_vertex(i, j): (i, j) for i in a.vertices for j in b.vertices}
    _TENSOR_CACHE[cache_key] = lam
    return lam


def algebra_report(a: BoundAlgebra, cutoff: int = 12) -> dict:
    """Dimensions plus homological classification of an algebra."""
    from . import homology

    gl = homology.gldim(a, cutoff)
    inj = homology.inj_dim_algebra(a, cutoff)
    gor = homology.is_gorenstein(a, cutoff)
    cm = homology.is_cm_free(a, cutoff)
    report = {
        "name": a.name,
        "dim": a.dim,
        "vertices": len(a.vertices),
        "simples": len(a.vertices),
        "arrows": len(a.arrows),
        "radical_dim": len(a.radical_basis()),
        "loewy_bound": a.nil_length,
        "gldim": gl.to_json(),
        "injdim": inj.to_json(),
        "gorenstein": gor.to_json(),
        "cm_free": cm.to_json(),
        "cutoff": cutoff,
    }
    if a.tensor_of is not None:
        report["tensor_of"] = [a.tensor_of[0].name, a.tensor_of[1].name]
    return report
