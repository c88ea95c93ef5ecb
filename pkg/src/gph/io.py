"""JSON files for algebras and modules, and JSON forms of matrices and maps."""
from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .exactla import Field, Mat
from .quiveralg import BoundAlgebra, Quiver, build_algebra, tensor_algebra
from .rep import Rep, RepMap

SCHEMA = "gph/1"


def mat_to_json(m: Mat) -> list[list[str]]:
    return m.to_literals()


def map_to_json(f: RepMap) -> dict:
    return {v: mat_to_json(b) for v, b in f.blocks.items()}


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _render(x, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_render(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, (list, tuple)):
        if all(not isinstance(e, (dict, list, tuple)) for e in x):
            return json.dumps(list(x), ensure_ascii=False)
        if all(isinstance(e, (list, tuple)) and all(not isinstance(y, (dict, list, tuple)) for y in e) for e in x):
            return "[" + ", ".join(json.dumps(list(e), ensure_ascii=False) for e in x) + "]"
        items = [pad + _render(e, indent + 1) for e in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(x, ensure_ascii=False)


def dump_json(data, path=None) -> str:
    """Indented JSON with scalar lists and matrices kept on one line."""
    text = _render(data, 0) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"{where}: missing field {key!r}")
    return d[key]


# -- algebras -------------------------------------------------------------------------

def algebra_to_json(a: BoundAlgebra) -> dict:
    if a.tensor_of is not None:
        fa, fb = a.tensor_of
        return {"schema": SCHEMA, "kind": "algebra", "name": a.name, "tensor_of": [fa.name, fb.name],
                "factors": [algebra_to_json(fa), algebra_to_json(fb)],
                "vertex_map": {v: list(p) for v, p in a.vertex_pairs.items()}}
    rels = []
    for r in a.relations:
        rels.append([{"source": p[0], "path": list(p[1]), "coef": str(c)} for p, c in sorted(r.items())])
    return {
        "schema": SCHEMA,
        "kind": "algebra",
        "name": a.name,
        "field": a.field.to_json(),
        "vertices": list(a.vertices),
        "arrows": [{"name": x.name, "source": x.source, "target": x.target} for x in a.arrows],
        "relations": rels,
    }


def algebra_from_json(d: dict, base: Path | None = None, where: str = "algebra") -> BoundAlgebra:
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object")
    if "tensor_of" in d:
        facs = _need(d, "factors", where)
        if not isinstance(facs, list) or len(facs) != 2:
            raise InputError(f"{where}.factors: expected two algebras")
        a = _algebra_ref(facs[0], base, f"{where}.factors[0]")
        b = _algebra_ref(facs[1], base, f"{where}.factors[1]")
        lam = tensor_algebra(a, b)
        if d.get("name"):
            lam.name = d["name"]
        return lam
    try:
        field = Field.from_json(d.get("field", {"kind": "Q"}))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{where}.field: {exc}") from exc
    verts = _need(d, "vertices", where)
    if not isinstance(verts, list) or not verts:
        raise InputError(f"{where}.vertices: expected a non-empty list")
    arrows = []
    for k, x in enumerate(_need(d, "arrows", where)):
        w = f"{where}.arrows[{k}]"
        arrows.append((str(_need(x, "name", w)), str(_need(x, "source", w)), str(_need(x, "target", w))))
    try:
        q = Quiver([str(v) for v in verts], arrows)
    except (ValueError, KeyError) as exc:
        raise InputError(f"{where}: {exc}") from exc
    rels = []
    for k, r in enumerate(d.get("relations", [])):
        rel = {}
        for t, term in enumerate(r):
            w = f"{where}.relations[{k}][{t}]"
            path = tuple(str(x) for x in _need(term, "path", w))
            if path:
                try:
                    src = q.arrow(path[0]).source
                except InputError as exc:
                    raise InputError(f"{w}.path: {exc}") from None
            else:
                src = str(_need(term, "source", w))
            try:
                coef = field.parse(term.get("coef", "1"))
            except ValueError as exc:
                raise InputError(f"{w}.coef: {exc}") from exc
            key = (src, path)
            rel[key] = rel.get(key, field.zero) + coef
        rels.append(rel)
    return build_algebra(field, q, rels, name=d.get("name"))


def _algebra_ref(ref, base: Path | None, where: str) -> BoundAlgebra:
    if isinstance(ref, str):
        path = Path(ref) if base is None else base / ref
        return load_algebra(path)
    return algebra_from_json(ref, base, where)


def load_algebra(path) -> BoundAlgebra:
    path = Path(path)
    return algebra_from_json(load_json(path), path.parent, str(path))


# -- modules --------------------------------------------------------------------------

def module_to_json(m: Rep, inline_algebra: bool = True) -> dict:
    out = {"schema": SCHEMA, "kind": "module", "name": m.name}
    if inline_algebra:
        out["algebra"] = algebra_to_json(m.algebra)
    out["dims"] = {v: m.dims[v] for v in m.algebra.vertices}
    out["matrices"] = {k: mat_to_json(v) for k, v in m.action.items()}
    return out


def module_from_json(d: dict, algebra: BoundAlgebra | None = None, base: Path | None = None,
                     where: str = "module") -> Rep:
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object")
    if algebra is None:
        ref = d.get("algebra")
        if ref is None:
            raise InputError(f"{where}: missing field 'algebra'")
        algebra = _algebra_ref(ref, base, f"{where}.algebra")
    if "spaces" in d:
        return _b_over_a_from_json(d, algebra, where)
    field = algebra.field
    dims_raw = _need(d, "dims", where)
    if isinstance(dims_raw, list):
        if len(dims_raw) != len(algebra.vertices):
            raise InputError(f"{where}.dims: expected {len(algebra.vertices)} entries")
        dims = dict(zip(algebra.vertices, dims_raw))
    else:
        dims = dict(dims_raw)
    for v in algebra.vertices:
        if v not in dims:
            raise InputError(f"{where}.dims: missing vertex {v!r}")
        if not isinstance(dims[v], int) or dims[v] < 0:
            raise InputError(f"{where}.dims[{v!r}]: expected a non-negative integer")
    extra = set(dims) - set(algebra.vertices)
    if extra:
        raise InputError(f"{where}.dims: unknown vertices {sorted(extra)}")
    mats = d.get("matrices", {})
    action = {}
    for arr in algebra.arrows:
        r, c = dims[arr.target], dims[arr.source]
        raw = mats.get(arr.name)
        w = f"{where}.matrices[{arr.name!r}]"
        if raw is None:
            if r and c:
                raise InputError(f"{w}: missing ({r}x{c} expected)")
            action[arr.name] = Mat.zeros(field, r, c)
            continue
        if r == 0 or c == 0:
            if raw not in ([], [[]]) and not (r and not c and all(row == [] for row in raw)):
                raise InputError(f"{w}: expected an empty {r}x{c} matrix")
            action[arr.name] = Mat.zeros(field, r, c)
            continue
        if len(raw) != r or any(not isinstance(row, list) or len(row) != c for row in raw):
            raise InputError(f"{w}: expected shape {r}x{c}")
        try:
            action[arr.name] = Mat.from_literals(field, raw)
        except ValueError as exc:
            raise InputError(f"{w}: {exc}") from exc
    unknown = set(mats) - {a.name for a in algebra.arrows}
    if unknown:
        raise InputError(f"{where}.matrices: unknown arrows {sorted(unknown)}")
    return Rep(algebra, dims, action, name=d.get("name"), check=True)


def load_module(path, algebra: BoundAlgebra | None = None) -> Rep:
    path = Path(path)
    return module_from_json(load_json(path), algebra, path.parent, str(path))


def _b_over_a_from_json(d: dict, lam: BoundAlgebra, where: str) -> Rep:
    """A Λ-module written as a representation of B over A.

    Fields: "a_modules" (label -> A-module in dims/matrices form), "spaces"
    (B-vertex -> label) and "maps" (B-arrow -> matrix, or per-A-vertex matrices).
    """
    from .tensorrep import from_b_representation

    if lam.tensor_of is None:
        raise InputError(f"{where}: the spaces form needs a tensor algebra")
    a, b = lam.tensor_of
    lib = {}
    for label, md in _need(d, "a_modules", where).items():
        lib[label] = module_from_json(md, a, None, f"{where}.a_modules[{label!r}]")
        lib[label].name = label
    spaces = {}
    for j, label in _need(d, "spaces", where).items():
        if label not in lib:
            raise InputError(f"{where}.spaces[{j!r}]: unknown A-module {label!r}")
        spaces[str(j)] = lib[label]
    maps = {}
    for name, raw in d.get("maps", {}).items():
        w = f"{where}.maps[{name!r}]"
        try:
            be = b.quiver.arrow(name)
        except InputError as exc:
            raise InputError(f"{w}: {exc}") from None
        per_vertex = raw if isinstance(raw, dict) else {a.vertices[0]: raw} if len(a.vertices) == 1 else None
        if per_vertex is None:
            raise InputError(f"{w}: give one matrix per A-vertex")
        blocks = {}
        for i in a.vertices:
            r, c = spaces[be.target].dims[i], spaces[be.source].dims[i]
            m = per_vertex.get(i)
            if m is None or r == 0 or c == 0:
                blocks[i] = Mat.zeros(a.field, r, c)
                continue
            if len(m) != r or any(len(row) != c for row in m):
                raise InputError(f"{w}[{i!r}]: expected shape {r}x{c}")
            try:
                blocks[i] = Mat.from_literals(a.field, m)
            except ValueError as exc:
                raise InputError(f"{w}[{i!r}]: {exc}") from exc
        maps[name] = blocks
    return from_b_representation(lam, spaces, maps, name=d.get("name"))


def map_from_json(raw: dict, source: Rep, target: Rep, where: str = "map") -> RepMap:
    f = source.algebra.field
    blocks = {}
    for v in source.algebra.vertices:
        r, c = target.dims[v], source.dims[v]
        m = raw.get(v) if isinstance(raw, dict) else None
        if r == 0 or c == 0 or m is None:
            if m is None and r and c:
                raise InputError(f"{where}[{v!r}]: missing ({r}x{c} expected)")
            blocks[v] = Mat.zeros(f, r, c)
            continue
        if len(m) != r or any(not isinstance(row, list) or len(row) != c for row in m):
            raise InputError(f"{where}[{v!r}]: expected shape {r}x{c}")
        try:
            blocks[v] = Mat.from_literals(f, m)
        except ValueError as exc:
            raise InputError(f"{where}[{v!r}]: {exc}") from exc
    try:
        return RepMap(source, target, blocks, check=True)
    except (ValueError, InputError) as exc:
        raise InputError(f"{where}: {exc}") from None


# -- filtration certificates ----------------------------------------------------------

def certificate_to_json(cert) -> dict:
    """Self-contained certificate: every module and map needed for replay."""
    amb = cert.ambient

    def mod(m):
        return module_to_json(m, inline_algebra=False)

    factors = []
    for fac, w in zip(cert.factors, cert.witnesses):
        d = {"kind": fac.kind, "module": mod(fac.module), "witness": map_to_json(w)}
        if fac.kind == "tensor":
            d.update(u=module_to_json(fac.u), v=module_to_json(fac.v),
                     u_label=list(fac.u_label), v_label=list(fac.v_label))
        factors.append(d)
    out = {"schema": SCHEMA, "kind": "filtration-certificate", "class": cert.kind,
           "algebra": algebra_to_json(amb.algebra), "ambient": mod(amb),
           "chain": [{"submodule": mod(c.source), "inclusion": map_to_json(c)} for c in cert.chain],
           "factors": factors, "notes": cert.notes}
    if cert.target is not None:
        out["target"] = mod(cert.target)
    if cert.complement is not None:
        out["complement"] = mod(cert.complement)
    if cert.complement_iso is not None:
        out["complement_iso"] = map_to_json(cert.complement_iso)
    return out


def certificate_from_json(d: dict, where: str = "certificate"):
    from .filtration import Factor, FiltrationCert
    from .rep import direct_sum

    if not isinstance(d, dict) or d.get("kind") != "filtration-certificate":
        raise InputError(f"{where}: not a filtration certificate")
    lam = algebra_from_json(_need(d, "algebra", where), None, f"{where}.algebra")
    amb = module_from_json(_need(d, "ambient", where), lam, None, f"{where}.ambient")
    chain, factors, witnesses = [], [], []
    raw_chain, raw_factors = _need(d, "chain", where), _need(d, "factors", where)
    if len(raw_chain) != len(raw_factors):
        raise InputError(f"{where}: chain and factors differ in length")
    for t, (c, fd) in enumerate(zip(raw_chain, raw_factors)):
        w = f"{where}.chain[{t}]"
        z = module_from_json(_need(c, "submodule", w), lam, None, f"{w}.submodule")
        chain.append(map_from_json(_need(c, "inclusion", w), z, amb, f"{w}.inclusion"))
        wf = f"{where}.factors[{t}]"
        fm = module_from_json(_need(fd, "module", wf), lam, None, f"{wf}.module")
        if fd.get("kind") == "tensor":
            u = module_from_json(_need(fd, "u", wf), None, None, f"{wf}.u")
            v = module_from_json(_need(fd, "v", wf), None, None, f"{wf}.v")
            factors.append(Factor(fm, "tensor", u, v, tuple(fd.get("u_label", ())), tuple(fd.get("v_label", ()))))
        else:
            factors.append(Factor(fm))
        witnesses.append(map_from_json(_need(fd, "witness", wf), z, fm, f"{wf}.witness"))
    target = complement = iso = None
    if "target" in d:
        target = module_from_json(d["target"], lam, None, f"{where}.target")
    if "complement" in d:
        complement = module_from_json(d["complement"], lam, None, f"{where}.complement")
    if "complement_iso" in d:
        src = direct_sum([target, complement]) if complement is not None else target
        if src is None:
            raise InputError(f"{where}.complement_iso: needs a target")
        iso = map_from_json(d["complement_iso"], src, amb, f"{where}.complement_iso")
    return FiltrationCert(amb, chain, factors, witnesses, target, complement, iso, dict(d.get("notes", {})))
