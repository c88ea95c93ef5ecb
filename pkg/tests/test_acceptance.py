"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import itertools
import random
import time

import pytest

from gph.corpus import case_context, case_modules, load_case, morita_samples
from gph.filtration import (Factor, factor_claims, omega_class_check, search_filtration, syzygy_filtration,
                            verify_filtration)
from gph.homology import ext, ext_range, gldim, inj_dim_algebra, is_cm_free, is_gorenstein, is_gproj, \
    is_projective, tor
from gph.mono import embed_into_projectives, gproj_decide, mon_L_membership, mon_membership
from gph.quiveralg import Quiver, build_algebra, opposite_algebra, tensor_algebra
from gph.rep import dual, is_indecomposable, is_isomorphic, projective, regular, restrict, simple
from gph.sampling import random_gproj, random_module
from gph.tensorrep import regular_tensor, tensor_module
from conftest import corpus_algebra

CUTOFF = 12


def announce(capsys, n, title, ok, detail, elapsed):
    with capsys.disabled():
        print(f"\ncriterion {n} {'PASS' if ok else 'FAIL'}: {title} [{detail}] {elapsed:.2f}s")


def test_criterion_1_tensor_presentation(capsys, kx, a2):
    t0 = time.perf_counter()
    lam = tensor_algebra(kx, a2)
    # expected presentation: loops beta at 1, gamma at 2, alpha: 1 -> 2
    ren = {"x*1": "beta", "x*2": "gamma", "o*alpha": "alpha"}
    q = lam.quiver
    rq = Quiver(list(q.vertices), [(ren[x.name], x.source, x.target) for x in q.arrows])
    f = lam.field
    one = f(1)
    want = build_algebra(f, rq, [{("o*1", ("beta", "beta")): one},
                                 {("o*2", ("gamma", "gamma")): one},
                                 {("o*1", ("beta", "alpha")): one, ("o*1", ("alpha", "gamma")): -one}])
    got = build_algebra(f, rq, [{(p[0], tuple(ren[x] for x in p[1])): c for p, c in r.items()}
                                for r in lam.relations])
    same = got.key() == want.key()
    pairs = [("k_x2", "kA2"), ("k_x2", "square"), ("k_x2", "morita_B"), ("k_x2", "k_y2"), ("kA2", "square")]
    mult = []
    for x, y in pairs:
        a, b = corpus_algebra(x), corpus_algebra(y)
        mult.append(tensor_algebra(a, b).dim == a.dim * b.dim)
    elapsed = time.perf_counter() - t0
    ok = same and lam.dim == 6 and len(q.vertices) == 2 and len(q.arrows) == 3 and all(mult) and elapsed < 1
    announce(capsys, 1, "tensor presentation", ok, f"dim {lam.dim}, same ideal {same}, "
                                                   f"{sum(mult)}/5 multiplicative", elapsed)
    assert ok


def test_criterion_2_not_symmetric_memberships(capsys):
    t0 = time.perf_counter()
    mods = case_modules("ex-not-symmetric")
    expected = {
        "B-over-A": {"0-S": "yes", "0-A": "yes", "S-S": "yes", "S-lambda-A": "yes", "A-A": "yes", "A-0": "no"},
        "A-over-B": {"0-A": "yes", "A-A": "yes", "A-0": "yes", "A-lambdapi-A": "yes",
                     "0-S": "no", "S-S": "no", "S-lambda-A": "no"},
    }
    bad = []
    for side, table in expected.items():
        for name, want in table.items():
            fast = mon_membership(mods[name], side, "fast").verdict
            cross = mon_membership(mods[name], side, "cross-validate", CUTOFF).verdict
            if not fast == cross == want:
                bad.append((side, name, fast, cross))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 2
    announce(capsys, 2, "not-symmetric memberships", ok, f"13 verdicts, mismatches {bad}", elapsed)
    assert ok


def test_criterion_3_d4_square_modules(capsys, lam_d4, kx, square):
    t0 = time.perf_counter()
    mods = case_modules("ex-d4-square")
    names = sorted(mods)
    assert len(names) == 12
    inj = inj_dim_algebra(lam_d4, CUTOFF)
    gl = gldim(square, CUTOFF)
    facs = [Factor(tensor_module(u, v, lam_d4), "tensor", u, v)
            for u in (simple(kx, "o"), regular(kx)) for v in (projective(square, j) for j in square.vertices)]
    failures = []
    for n in names:
        x = mods[n]
        d = gproj_decide(x, CUTOFF)
        fired = {t["strategy"]: t["answer"] for t in d.trace}
        cert = search_filtration(x, facs, 8, keep=lambda c: mon_membership(c).member)
        checks = {
            "mon_L": mon_L_membership(x, "gproj", CUTOFF).member,
            "decide": d.yes and fired.get("i") == "yes" and fired.get("ii") == "yes",
            "non_projective": not is_projective(x),
            "indecomposable": is_indecomposable(x).value is True,
            "filtration": cert is not None and verify_filtration(cert).ok,
        }
        failures += [(n, k) for k, v in checks.items() if not v]
    clashes = [(x, y) for x, y in itertools.combinations(names, 2) if is_isomorphic(mods[x], mods[y]).isomorphic]
    elapsed = time.perf_counter() - t0
    ok = (inj.certified and inj.value == 2 and gl.certified and gl.value == 2 and not failures and not clashes
          and elapsed < 60)
    announce(capsys, 3, "twelve Gorenstein projectives over the D4 square", ok,
             f"injdim {inj}, gldim(B) {gl}, failures {failures}, isomorphic pairs {clashes}", elapsed)
    assert ok


def test_criterion_4_criteria_equivalence(capsys, lam_ns, lam_d4, lam_morita, a2):
    t0 = time.perf_counter()
    algebras = [lam_ns, lam_d4, lam_morita, tensor_algebra(a2, a2)]
    rng = random.Random(4)
    verdicts = {"yes": 0, "no": 0}
    total = 0
    for k in range(200):
        lam = algebras[k % len(algebras)]
        x = random_module(lam, rng, 8)
        for side in ("B-over-A", "A-over-B"):
            # cross-validate raises InternalError on any disagreement
            verdicts[mon_membership(x, side, "cross-validate", CUTOFF).verdict] += 1
        total += 1
    elapsed = time.perf_counter() - t0
    ok = total >= 200 and all(verdicts.values())
    announce(capsys, 4, "restriction vs Tor/Ext criteria", ok,
             f"{total} modules over {len(algebras)} algebras, verdicts {verdicts}, no disagreement", elapsed)
    assert ok


def test_criterion_5_homology_oracles(capsys, kx, a2, square, lam_ns, lam_d4):
    t0 = time.perf_counter()
    rng = random.Random(5)
    algebras = [lam_ns, lam_d4, square, corpus_algebra("morita_B")]
    mismatches = 0
    n = 0
    while n < 100:
        a = algebras[n % len(algebras)]
        v = random_module(opposite_algebra(a), rng, 6)
        x = random_module(a, rng, 6)
        i = rng.randrange(0, 4)
        mismatches += tor(v, x, i) != ext(x, dual(v), i)
        n += 1
    s = simple(kx, "o")
    # the resolution of S is periodic with differentials x, so every Ext^i(S, S) is one-dimensional
    periodic = ext_range(s, s, 0, 5) == [1] * 6
    dims = (gldim(a2).to_json(), gldim(square).to_json(), inj_dim_algebra(kx).to_json())
    certified = [d["status"] == "certified" for d in dims]
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and periodic and all(certified) and [d["value"] for d in dims] == [1, 2, 0]
    announce(capsys, 5, "homology oracles", ok,
             f"{n} Tor/Ext triples, {mismatches} mismatches, periodic {periodic}, "
             f"gldim kA2 {dims[0]['value']}, gldim square {dims[1]['value']}, injdim {dims[2]['value']}", elapsed)
    assert ok


def test_criterion_6_gproj_tensor_closure(capsys, kx, a2, square, morita_b):
    t0 = time.perf_counter()
    rng = random.Random(6)
    factors = [kx, a2, square, morita_b]
    pairs = list(itertools.product(factors, repeat=2))
    lams = {(id(a), id(b)): tensor_algebra(a, b) for a, b in pairs}
    fail_pairs = 0
    for k in range(56):
        a, b = pairs[k % len(pairs)]
        x, y = random_gproj(a, rng, 4), random_gproj(b, rng, 4)
        fail_pairs += not is_gproj(tensor_module(x, y, lams[id(a), id(b)])).yes
    fail_restr = 0
    for k in range(24):
        a, b = pairs[k % len(pairs)]
        lam = lams[id(a), id(b)]
        m = random_gproj(lam, rng, 10)
        assert is_gproj(m).yes
        fail_restr += not (is_gproj(restrict(m, "A")).yes and is_gproj(restrict(m, "B")).yes)
    elapsed = time.perf_counter() - t0
    ok = fail_pairs == 0 and fail_restr == 0
    announce(capsys, 6, "Gorenstein projective tensor closure", ok,
             f"56 pairs with {fail_pairs} failures, 24 restrictions with {fail_restr} failures", elapsed)
    assert ok


def _corpus_members():
    out = []
    for case in ("ex-not-symmetric", "ex-d4-square"):
        for name, x in case_modules(case).items():
            if x.algebra.tensor_of is not None and mon_L_membership(x, "gproj", CUTOFF).member:
                out.append((f"{case}/{name}", x))
    ctx = case_context("ex-morita-context")
    spec = next(a for a in load_case("ex-morita-context")["assertions"] if a["op"] == "morita_exactness")
    for x in morita_samples(ctx.algebra(spec["algebra"]), spec["seed"], spec["count"]):
        if mon_L_membership(x, "gproj", CUTOFF).member:
            out.append((f"ex-morita-context/{x.name}", x))
    return out


def test_criterion_7_perp_lambda_and_embedding(capsys):
    t0 = time.perf_counter()
    members = _corpus_members()
    failures = []
    for name, x in members:
        if any(ext_range(x, regular_tensor(x.algebra), 1, CUTOFF)):
            failures.append((name, "ext"))
        e = embed_into_projectives(x)
        if not (e.mono.is_injective() and e.cokernel_report.member):
            failures.append((name, "embed"))
    elapsed = time.perf_counter() - t0
    ok = len(members) >= 5 + 12 and not failures
    announce(capsys, 7, "Ext vanishing against the regular module and embeddings", ok,
             f"{len(members)} corpus members, failures {failures}", elapsed)
    assert ok


def test_criterion_8_syzygy_filtrations(capsys):
    t0 = time.perf_counter()
    ctx = case_context("gorenstein-pairs")
    spec = next(a for a in load_case("gorenstein-pairs")["assertions"] if a["op"] == "syzygy_filtration")
    checked = 0
    failures = []
    for xr, yr in spec["pairs"]:
        x, y = ctx.module(xr), ctx.module(yr)
        for dA, dB in ((i, j) for i in range(3) for j in range(3) if i + j <= 2):
            cert = syzygy_filtration(x, y, dA, dB)
            good = verify_filtration(cert).ok
            good &= all(omega_class_check(u) == "yes" and omega_class_check(w) == "yes"
                        for u, w in factor_claims(cert, x, y))
            checked += 1
            if not good:
                failures.append((xr, yr, dA, dB))
    elapsed = time.perf_counter() - t0
    ok = checked == 6 * len(spec["pairs"]) and not failures and elapsed < 30
    announce(capsys, 8, "syzygy filtrations", ok, f"{checked} certificates, failures {failures}", elapsed)
    assert ok


def test_criterion_9_cm_free_conjunction(capsys, kx):
    t0 = time.perf_counter()
    names = ["k_x2", "kA2", "square", "morita_B"]
    algs = {n: corpus_algebra(n) for n in names}
    verdicts = {n: is_cm_free(a) for n, a in algs.items()}
    wrong = []
    for x, y in itertools.combinations_with_replacement(names, 2):
        lam = tensor_algebra(algs[x], algs[y])
        if not is_gorenstein(lam).yes:
            wrong.append((x, y, "not Gorenstein"))
            continue
        want = "yes" if verdicts[x].yes and verdicts[y].yes else "no"
        if is_cm_free(lam).answer != want:
            wrong.append((x, y))
    w = verdicts["k_x2"].witness
    witness_ok = verdicts["k_x2"].no and w is not None and is_isomorphic(w, simple(kx, "o")).isomorphic
    elapsed = time.perf_counter() - t0
    ok = not wrong and witness_ok
    announce(capsys, 9, "CM-free conjunction", ok,
             f"10 pairs, mismatches {wrong}, witness for k[x]/(x^2) is S: {witness_ok}", elapsed)
    assert ok
