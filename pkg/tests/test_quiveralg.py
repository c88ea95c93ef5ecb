import itertools
import random

import pytest

from gph.errors import InputError, NotAdmissibleError
from gph.exactla import Field
from gph.quiveralg import Quiver, algebra_report, build_algebra, opposite_algebra, tensor_algebra, tensor_vertex
from conftest import QQ, corpus_algebra, path_algebra


def test_quiver_rejects_unknown_endpoints():
    with pytest.raises((InputError, ValueError)):
        Quiver(["1"], [("a", "1", "2")])


def test_quiver_unknown_arrow():
    q = Quiver(["1", "2"], [("a", "1", "2")])
    with pytest.raises(InputError):
        q.arrow("b")


@pytest.mark.parametrize("name,dim", [("k_x2", 2), ("kA2", 3), ("square", 9), ("morita_B", 4)])
def test_corpus_algebra_dims(name, dim):
    # square: 4 idempotents, 4 arrows, one surviving length-two path
    assert corpus_algebra(name).dim == dim


def test_path_algebra_of_a3_linear():
    a = path_algebra(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    assert a.dim == 6
    zero = path_algebra(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], [[(1, ["a", "b"])]])
    assert zero.dim == 5


def test_truncated_polynomial_dims():
    for n in range(2, 6):
        a = path_algebra(["o"], [("x", "o", "o")], [[(1, ["x"] * n)]])
        assert a.dim == n


def test_non_admissible_relation_rejected():
    with pytest.raises(NotAdmissibleError):
        path_algebra(["1", "2"], [("a", "1", "2")], [[(1, ["a"])]])


def test_infinite_dimension_rejected():
    q = Quiver(["o"], [("x", "o", "o")])
    with pytest.raises(NotAdmissibleError):
        build_algebra(QQ, q, [], max_path_length=5)


def test_non_parallel_relation_rejected():
    with pytest.raises(InputError):
        path_algebra(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "1")],
                     [[(1, ["a", "b"]), (1, ["c", "c"])]])


def _assoc_check(a, trials=200, seed=0):
    rng = random.Random(seed)
    n = a.dim
    for _ in range(trials):
        i, j, k = (rng.randrange(n) for _ in range(3))
        x, y, z = {i: a.field.one}, {j: a.field.one}, {k: a.field.one}
        assert a.mul(x, a.mul(y, z)) == a.mul(a.mul(x, y), z)


@pytest.mark.parametrize("name", ["k_x2", "kA2", "square", "morita_B"])
def test_multiplication_is_associative(name):
    _assoc_check(corpus_algebra(name))


def test_tensor_multiplication_is_associative(lam_d4, lam_morita):
    _assoc_check(lam_d4, 300, 1)
    _assoc_check(lam_morita, 300, 2)


def test_normal_form_independent_of_split_point(square):
    # reduce(p) = reduce(prefix) * reduce(suffix) for every split of every path up to length 3
    q = square.quiver
    for n in range(2, 4):
        for path in q.paths_of_length(n):
            src, arrows = path
            whole = square.reduce_path(path)
            for cut in range(1, n):
                first = square.path_element(arrows[:cut], src)
                second = square.path_element(arrows[cut:])
                assert square.mul(second, first) == whole


def test_commutativity_relation_holds(square):
    ag = square.path_element(["alpha", "gamma"])
    bd = square.path_element(["beta", "delta"])
    assert ag == bd and ag


def test_opposite_is_involutive(square, lam_d4):
    for a in (square, lam_d4):
        op = opposite_algebra(a)
        assert op.dim == a.dim
        assert opposite_algebra(op) == a


def test_opposite_reverses_arrows(a2):
    op = opposite_algebra(a2)
    (arr,) = op.arrows
    assert (arr.source, arr.target) == ("2", "1")


@pytest.mark.parametrize("x,y", [("k_x2", "kA2"), ("k_x2", "square"), ("kA2", "kA2"), ("morita_B", "kA2"),
                                 ("k_x2", "k_y2"), ("square", "morita_B")])
def test_tensor_dim_multiplicative(x, y):
    a, b = corpus_algebra(x), corpus_algebra(y)
    lam = tensor_algebra(a, b)
    assert lam.dim == a.dim * b.dim
    assert len(lam.vertices) == len(a.vertices) * len(b.vertices)
    assert len(lam.arrows) == len(a.arrows) * len(b.vertices) + len(a.vertices) * len(b.arrows)


def test_tensor_vertex_naming(lam_ns):
    assert tensor_vertex("o", "1") == "o*1"
    assert set(lam_ns.vertices) == {"o*1", "o*2"}
    assert lam_ns.vertex_pairs["o*2"] == ("o", "2")


def test_tensor_commutation_relations(lam_ns):
    # (x at 2) after alpha equals alpha after (x at 1)
    left = lam_ns.path_element(["x*1", "o*alpha"])
    right = lam_ns.path_element(["o*alpha", "x*2"])
    assert left == right and left


def test_tensor_algebra_cached(kx, a2):
    assert tensor_algebra(kx, a2) is tensor_algebra(kx, a2)


def test_tensor_over_prime_field():
    f = Field(3)
    a = path_algebra(["o"], [("x", "o", "o")], [[(1, ["x", "x", "x"])]], field=f)
    b = path_algebra(["1", "2"], [("a", "1", "2")], field=f)
    assert tensor_algebra(a, b).dim == 9


def test_tensor_rejects_mixed_fields(kx):
    b = path_algebra(["o"], [("y", "o", "o")], [[(1, ["y", "y"])]], field=Field(3))
    with pytest.raises(InputError):
        tensor_algebra(kx, b)


def test_algebra_report_fields(square):
    r = algebra_report(square)
    assert r["dim"] == 9
    assert r["gldim"] == {"value": 2, "status": "certified", "cutoff": 12}
    assert r["gorenstein"]["answer"] == "yes"
