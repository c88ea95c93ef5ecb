"""Command-line front end: gph <group> <verb> [files] [flags]."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus
from .errors import CutoffError, GphError, InputError
from .filtration import DEFAULT_DEPTH, Factor, search_filtration, syzygy_filtration, verify_filtration
from .homology import DEFAULT_CUTOFF, ext_range, is_gproj, min_resolution, tor_range
from .io import (SCHEMA, algebra_to_json, certificate_from_json, certificate_to_json, dump_json, load_algebra,
                 load_json, load_module, map_to_json, module_to_json)
from .mono import CLASSES, embed_into_projectives, gproj_decide, mon_L_membership, mon_membership
from .quiveralg import algebra_report, tensor_algebra
from .rep import hom_space, is_indecomposable, is_isomorphic, splitting_field_check

EXIT_OK, EXIT_ASSERTION, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3
STRATEGIES = ("auto", "gorenstein", "mon", "bounded")


class _Undecided(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--cutoff", type=_nonneg, default=DEFAULT_CUTOFF)
    p.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
    p.add_argument("--cross-validate", action="store_true", help="run both membership criteria and compare")
    p.add_argument("--require-decision", action="store_true", help="exit 3 on an unknown verdict")
    p.add_argument("-o", "--output", metavar="PATH", help="write the report (or produced object) here")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--algebra", metavar="PATH", help="algebra file overriding the one named in module files")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gph", description="Exact module computations over tensor algebras.")
    groups = parser.add_subparsers(dest="group", required=True)

    def verbs(name, help_):
        g = groups.add_parser(name, help=help_)
        return g.add_subparsers(dest="verb", required=True)

    alg = verbs("algebra", "algebra files")
    alg.add_parser("info", parents=[common], help="dimension and homological invariants").add_argument("file")
    t = alg.add_parser("tensor", parents=[common], help="tensor product of two algebras")
    t.add_argument("a")
    t.add_argument("b")
    alg.add_parser("check", parents=[common], help="parse, validate and run the splitting check").add_argument("file")

    mod = verbs("module", "module files")
    for name, files, help_ in (
        ("hom", ("m", "n"), "dim Hom(m, n)"),
        ("ext", ("m", "n"), "dim Ext^i(m, n)"),
        ("tor", ("v", "x"), "dim Tor_i(v, x), v over the opposite algebra"),
        ("resolve", ("m",), "minimal projective resolution"),
        ("gproj", ("m",), "Gorenstein projectivity"),
        ("check-mon", ("x",), "membership in the monomorphism category"),
        ("check-mon-l", ("x",), "membership in Mon(B, A-L)"),
        ("embed", ("x",), "embedding into a projective with member cokernel"),
        ("indec", ("m",), "indecomposability"),
        ("iso", ("m", "n"), "isomorphism test"),
    ):
        sp = mod.add_parser(name, parents=[common], help=help_)
        for f in files:
            sp.add_argument(f)
        if name in ("ext", "tor"):
            sp.add_argument("--degree", type=_nonneg, default=None, help="single degree (default 0..cutoff)")
        if name == "check-mon":
            sp.add_argument("--side", choices=("B-over-A", "A-over-B"), default="B-over-A")
        if name == "check-mon-l":
            sp.add_argument("--class", dest="cls", choices=CLASSES, default="gproj")

    fil = verbs("filtration", "filtration certificates")
    s = fil.add_parser("syzygy", parents=[common], help="filtration of Ω^dA(x)⊗Ω^dB(y)")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--dA", type=_nonneg, required=True)
    s.add_argument("--dB", type=_nonneg, required=True)
    s2 = fil.add_parser("search", parents=[common], help="search for a filtration by given factors")
    s2.add_argument("x")
    s2.add_argument("factors", nargs="+", help="factor module files over the same algebra")
    fil.add_parser("verify", parents=[common], help="replay a certificate").add_argument("cert")

    cor = verbs("corpus", "worked example cases")
    r = cor.add_parser("run", parents=[common], help="run cases and compare with golden reports")
    r.add_argument("case", nargs="?")
    r.add_argument("--all", action="store_true")
    cor.add_parser("list", parents=[common], help="list case ids")
    return parser


# -- helpers ------------------------------------------------------------------------

def _module(path: str, args):
    alg = load_algebra(args.algebra) if args.algebra else None
    m = load_module(path, alg)
    if not m.name:
        m.name = Path(path).stem
    return m


def _settings(args) -> dict:
    return {"cutoff": args.cutoff, "depth": args.depth, "strategy": args.strategy,
            "mon_mode": "cross-validate" if args.cross_validate else "fast"}


def _decided(args, answer: str):
    if args.require_decision and answer == "unknown":
        raise _Undecided(answer)


def _degrees(args) -> tuple[int, int]:
    return (args.degree, args.degree) if args.degree is not None else (0, args.cutoff)


# -- commands -----------------------------------------------------------------------

def cmd_algebra(args) -> tuple[dict, dict | None]:
    if args.verb == "info":
        a = load_algebra(args.file)
        return algebra_report(a, args.cutoff), None
    if args.verb == "tensor":
        a, b = load_algebra(args.a), load_algebra(args.b)
        lam = tensor_algebra(a, b)
        return {"name": lam.name, "dim": lam.dim, "factor_dims": [a.dim, b.dim],
                "vertices": list(lam.vertices), "arrows": [x.name for x in lam.arrows]}, algebra_to_json(lam)
    a = load_algebra(args.file)
    sc = splitting_field_check(a)
    return {"name": a.name, "valid": True, "dim": a.dim, "splitting": sc}, None


def cmd_module(args) -> tuple[dict, dict | None]:
    v = args.verb
    if v == "hom":
        m, n = _module(args.m, args), _module(args.n, args)
        return {"dim_hom": len(hom_space(m, n))}, None
    if v == "ext":
        m, n = _module(args.m, args), _module(args.n, args)
        lo, hi = _degrees(args)
        return {"degrees": [lo, hi], "dims": ext_range(m, n, lo, hi, args.cutoff)}, None
    if v == "tor":
        a, x = _module(args.v, args), _module(args.x, args)
        lo, hi = _degrees(args)
        return {"degrees": [lo, hi], "dims": tor_range(a, x, lo, hi, args.cutoff)}, None
    if v == "resolve":
        m = _module(args.m, args)
        res = min_resolution(m, args.cutoff)
        return res.to_json(args.cutoff + 1), None
    if v == "gproj":
        m = _module(args.m, args)
        if args.strategy == "mon" or (args.strategy == "auto" and m.algebra.tensor_of is not None):
            if args.strategy == "mon":
                r = mon_L_membership(m, "gproj", args.cutoff)
                answer = "yes" if r.member else "unknown"
                out = {"answer": answer, "via": "Mon(B, A-Gproj) membership", "membership": r.to_json()}
            else:
                d = gproj_decide(m, args.cutoff)
                answer, out = d.answer, d.to_json()
        else:
            verdict = is_gproj(m, args.strategy, args.cutoff)
            answer, out = verdict.answer, verdict.to_json()
        _decided(args, answer)
        return out, None
    if v == "check-mon":
        x = _module(args.x, args)
        r = mon_membership(x, args.side, "cross-validate" if args.cross_validate else "fast", args.cutoff)
        _decided(args, r.verdict)
        return r.to_json(), None
    if v == "check-mon-l":
        x = _module(args.x, args)
        r = mon_L_membership(x, args.cls, args.cutoff, args.strategy if args.strategy != "mon" else "auto")
        _decided(args, r.verdict)
        return r.to_json(), None
    if v == "embed":
        x = _module(args.x, args)
        e = embed_into_projectives(x, cutoff=args.cutoff)
        return e.to_json(), {"mono": map_to_json(e.mono), "cokernel": module_to_json(e.cokernel)}
    if v == "indec":
        m = _module(args.m, args)
        r = is_indecomposable(m)
        answer = {True: "yes", False: "no", None: "unknown"}[r.value]
        _decided(args, answer)
        return {"answer": answer, "reason": r.reason, "end_dim": r.end_dim}, None
    m, n = _module(args.m, args), _module(args.n, args)
    r = is_isomorphic(m, n)
    return {"isomorphic": r.isomorphic, "method": r.method}, \
        ({"witness": map_to_json(r.witness)} if r.witness is not None else None)


def cmd_filtration(args) -> tuple[dict, dict | None]:
    if args.verb == "syzygy":
        x, y = _module(args.x, args), _module(args.y, args)
        cert = syzygy_filtration(x, y, args.dA, args.dB)
        v = verify_filtration(cert)
        return {"class": cert.kind, "factors": len(cert.factors), "verified": v.to_json(),
                "certificate": cert.to_json()}, certificate_to_json(cert)
    if args.verb == "search":
        x = _module(args.x, args)
        facs = [Factor(_module(f, args)) for f in args.factors]
        cert = search_filtration(x, facs, args.depth)
        if cert is None:
            _decided(args, "unknown")
            return {"answer": "not-found", "depth": args.depth}, None
        return {"answer": "found", "class": cert.kind, "factors": [f.module.name for f in cert.factors],
                "verified": verify_filtration(cert).to_json()}, certificate_to_json(cert)
    cert = certificate_from_json(load_json(args.cert), args.cert)
    v = verify_filtration(cert)
    return {"class": cert.kind, "verified": v.to_json()}, None


def cmd_corpus(args) -> tuple[dict, int]:
    if args.verb == "list":
        return {"cases": corpus.list_cases()}, EXIT_OK
    if args.all:
        reports = corpus.run_all()
    elif args.case:
        reports = {args.case: corpus.run_case(args.case)}
    else:
        raise InputError("corpus run needs a case id or --all")
    out = {}
    code = EXIT_OK
    for cid, rep in reports.items():
        gp = corpus.golden_path(cid)
        golden = gp.read_text() if gp.exists() else None
        rep_golden = None if golden is None else dump_json(rep) == golden
        out[cid] = {"summary": rep["summary"], "matches_golden": rep_golden, "report": rep}
        if rep["summary"]["failed"] or rep_golden is False:
            code = EXIT_ASSERTION
    return {"cases": out}, code


# -- rendering ----------------------------------------------------------------------

def render_text(report: dict) -> str:
    """Text form of a report; derived from the same structure as the JSON form."""
    if report.get("command") == "corpus run":
        lines = []
        for cid, c in report["result"]["cases"].items():
            lines.append(corpus.report_text(c["report"]))
            if c["matches_golden"] is not None:
                lines.append(f"  golden report {'matches' if c['matches_golden'] else 'DIFFERS'}")
        return "\n".join(lines) + "\n"
    lines = []

    def walk(x, indent):
        pad = "  " * indent
        if isinstance(x, dict):
            for k, v in x.items():
                if isinstance(v, (dict, list)) and v and any(isinstance(e, (dict, list)) for e in
                                                             (v.values() if isinstance(v, dict) else v)):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                elif isinstance(v, dict):
                    lines.append(f"{pad}{k}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(x, list):
            for e in x:
                if isinstance(e, list) and not any(isinstance(y, (dict, list)) for y in e):
                    lines.append(f"{pad}- {e}")
                elif isinstance(e, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(e, indent + 1)
                else:
                    lines.append(f"{pad}- {e}")
        else:
            lines.append(f"{pad}{x}")

    walk(report, 0)
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    command = f"{args.group} {args.verb}"
    inputs = [getattr(args, k) for k in ("file", "a", "b", "m", "n", "v", "x", "y", "cert", "case")
              if isinstance(getattr(args, k, None), str)]
    inputs += list(getattr(args, "factors", []) or [])
    code = EXIT_OK
    produced = None
    try:
        if args.group == "algebra":
            result, produced = cmd_algebra(args)
        elif args.group == "module":
            result, produced = cmd_module(args)
        elif args.group == "filtration":
            result, produced = cmd_filtration(args)
        else:
            result, code = cmd_corpus(args)
    except _Undecided:
        print(f"gph: {command}: verdict unknown within cutoff {args.cutoff}", file=sys.stderr)
        return EXIT_UNDECIDED
    except CutoffError as exc:
        print(f"gph: {command}: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED if args.require_decision else EXIT_INPUT
    except InputError as exc:
        print(f"gph: {command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GphError as exc:
        print(f"gph: {command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    report = {"schema": SCHEMA, "command": command, "inputs": inputs, "settings": _settings(args),
              "result": result}
    text = render_text(report) if args.format == "text" else dump_json(report)
    if args.output:
        # produced objects (algebras, certificates) go to -o; otherwise the report does
        Path(args.output).write_text(dump_json(dict({"schema": SCHEMA}, **produced)) if produced else text)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
