import random

import pytest

from gph.errors import InputError
from gph.exactla import Mat
from gph.homology import complete_resolution, ext, is_projective, syzygy
from gph.quiveralg import opposite_algebra, tensor_algebra
from gph.rep import (hom_space, injective, is_isomorphic, map_from_generators, projective, regular,
                     simple)
from gph.sampling import random_module
from gph.tensorrep import (from_b_representation, functor_V_tensor, injectives_of_lambda, projectives_of_lambda,
                           regular_tensor, simples_of_lambda, splice_complete_resolutions, tensor_map,
                           tensor_module)
from conftest import QQ
from test_homology import tor0_oracle


def test_tensor_of_projectives_and_simples(kx, square, lam_d4):
    for j in square.vertices:
        p = tensor_module(projective(kx, "o"), projective(square, j), lam_d4)
        assert is_isomorphic(p, projective(lam_d4, f"o*{j}"))
        assert is_projective(p)
        s = tensor_module(simple(kx, "o"), simple(square, j), lam_d4)
        assert is_isomorphic(s, simple(lam_d4, f"o*{j}"))
        i = tensor_module(injective(kx, "o"), injective(square, j), lam_d4)
        assert is_isomorphic(i, injective(lam_d4, f"o*{j}"))


def test_inventories(lam_d4):
    assert len(simples_of_lambda(lam_d4)) == 4
    assert sum(p.dim for p in projectives_of_lambda(lam_d4)) == lam_d4.dim
    assert sum(i.dim for i in injectives_of_lambda(lam_d4)) == lam_d4.dim
    assert is_isomorphic(regular_tensor(lam_d4), regular(lam_d4))


def test_tensor_module_free_data_matches_structure(kx, a2, lam_ns):
    p = tensor_module(regular(kx), regular(a2), lam_ns)
    assert p.free is not None
    # generator maps out of the tensor free module are homomorphisms
    n = regular(lam_ns)
    imgs = [[QQ(1) if k == 0 else QQ(0) for k in range(n.dims[g])] for g in p.free.gens]
    assert map_from_generators(p, n, imgs).is_homomorphism()


@pytest.mark.parametrize("seed", range(5))
def test_kunneth_for_hom_and_ext(kx, square, lam_d4, seed):
    rng = random.Random(seed)
    x, x2 = random_module(kx, rng, 3), random_module(kx, rng, 3)
    y, y2 = random_module(square, rng, 4), random_module(square, rng, 4)
    t, t2 = tensor_module(x, y, lam_d4), tensor_module(x2, y2, lam_d4)
    assert len(hom_space(t, t2)) == len(hom_space(x, x2)) * len(hom_space(y, y2))
    for n in (1, 2):
        expect = sum(ext(x, x2, p) * ext(y, y2, n - p) for p in range(n + 1))
        assert ext(t, t2, n) == expect


def test_tensor_map_is_homomorphism(kx, square, lam_d4):
    f = hom_space(regular(kx), simple(kx, "o"))[0]
    g = hom_space(projective(square, "1"), injective(square, "4"))[0]
    h = tensor_map(f, g, lam_d4)
    assert h.is_homomorphism()
    assert h.ranks() == {f"o*{j}": f.ranks()["o"] * g.ranks()[j] for j in square.vertices}


def test_functor_V_tensor_on_tensor_modules(kx, square, lam_d4):
    # V ⊗_B (U ⊗ Y) = U ⊗ (V ⊗_B Y), dimensions checked against a direct coequalizer count
    rng = random.Random(2)
    bop = opposite_algebra(square)
    for _ in range(6):
        u = random_module(kx, rng, 3)
        y = random_module(square, rng, 5)
        v = random_module(bop, rng, 4)
        out = functor_V_tensor(v, tensor_module(u, y, lam_d4))
        assert out.algebra == kx
        assert out.dim == u.dim * tor0_oracle(v, y)
        out.check()


def test_functor_V_tensor_rejects_wrong_side(kx, square, lam_d4):
    with pytest.raises(InputError):
        functor_V_tensor(simple(square, "1"), regular(lam_d4))
    with pytest.raises(InputError):
        functor_V_tensor(simple(square, "1"), regular(square))


def test_splice_of_complete_resolutions(kx, ky):
    lam = tensor_algebra(kx, ky)
    cx = complete_resolution(simple(kx, "o"), window=3)
    cy = complete_resolution(simple(ky, "o"), window=3)
    cz = splice_complete_resolutions(cx, cy, lam)
    assert cz.checks["exact"]
    assert cz.window == (-3, 3)
    # degree -n holds n+1 copies of the regular module
    for n in range(0, 4):
        assert cz.terms[-n].dim == 4 * (n + 1)
    assert is_isomorphic(cz.cocycle, simple(lam, "o*o"))


def test_splice_over_d4(kx, square, lam_d4):
    cx = complete_resolution(simple(kx, "o"), window=2)
    cy = complete_resolution(syzygy(injective(square, "2"), 1), window=2)
    cz = splice_complete_resolutions(cx, cy, lam_d4)
    assert cz.checks["exact"]


def test_from_b_representation_roundtrip(kx, square, lam_d4):
    a = regular(kx)
    s = simple(kx, "o")
    eye = {"o": Mat.identity(QQ, 2)}
    x = from_b_representation(lam_d4, {"1": a, "2": a, "3": a, "4": a},
                              {"alpha": eye, "beta": eye, "gamma": eye, "delta": eye})
    assert is_isomorphic(x, tensor_module(a, projective(square, "1"), lam_d4))
    with pytest.raises(InputError):
        from_b_representation(lam_d4, {"1": a, "2": a, "3": a, "4": a}, {"alpha": eye})
    with pytest.raises(InputError):
        # s -> 1 is not A-linear from S into A
        from_b_representation(lam_d4, {"1": s, "2": a, "3": s, "4": s},
                              {"alpha": {"o": Mat.from_ints(QQ, [[1], [0]])}, "beta": {"o": Mat.identity(QQ, 1)},
                               "gamma": {"o": Mat.from_ints(QQ, [[0, 1]])}, "delta": {"o": Mat.identity(QQ, 1)}})
