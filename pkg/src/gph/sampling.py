"""Seeded random modules for property suites."""
from __future__ import annotations

import random

from .homology import is_gorenstein, syzygy
from .quiveralg import BoundAlgebra, opposite_algebra
from .rep import (Rep, cokernel, direct_sum, dual, free_module, image, map_from_generators,
                  projective, simple)


def _random_vec(field, n: int, rng: random.Random, bound: int = 2) -> list:
    while True:
        v = [field.random(rng, bound) for _ in range(n)]
        if any(v) or n == 0:
            return v


def _relation_vec(p: Rep, v: str, rng: random.Random) -> list:
    """A random element at v, half the time pushed into the radical along an arrow."""
    f = p.algebra.field
    arrows = [x for x in p.algebra.arrows if x.target == v and p.dims[x.source]]
    if arrows and rng.random() < 0.5:
        x = rng.choice(arrows)
        vec = p.action[x.name].apply(_random_vec(f, p.dims[x.source], rng))
        if any(vec):
            return vec
    return _random_vec(f, p.dims[v], rng)


def random_quotient(a: BoundAlgebra, rng: random.Random, max_gens: int = 2, max_rels: int = 2) -> Rep:
    """A free module on random generators modulo a few random elements."""
    gens = [rng.choice(a.vertices) for _ in range(rng.randint(1, max_gens))]
    p = free_module(a, gens)
    rel_verts = [v for v in a.vertices if p.dims[v]]
    n_rel = rng.randint(0, max_rels)
    if n_rel == 0 or not rel_verts:
        return p
    rv = [rng.choice(rel_verts) for _ in range(n_rel)]
    src = free_module(a, rv)
    f = map_from_generators(src, p, [_relation_vec(p, v, rng) for v in rv])
    q, _ = cokernel(f)
    q.name = "rq"
    return q


def random_submodule(m: Rep, rng: random.Random, max_gens: int = 2) -> Rep:
    """The submodule generated by a few random elements of m."""
    a = m.algebra
    verts = [v for v in a.vertices if m.dims[v]]
    if not verts:
        return m
    gv = [rng.choice(verts) for _ in range(rng.randint(1, max_gens))]
    src = free_module(a, gv)
    f = map_from_generators(src, m, [_random_vec(a.field, m.dims[v], rng) for v in gv])
    im, _, _ = image(f)
    im.name = "rs"
    return im


def random_module(a: BoundAlgebra, rng: random.Random, max_dim: int = 12) -> Rep:
    """A small module from one of several constructions, retried until dim <= max_dim."""
    for _ in range(50):
        kind = rng.randrange(4)
        if kind == 0:
            m = random_quotient(a, rng)
        elif kind == 1:
            inj = dual(free_module(opposite_algebra(a), [rng.choice(a.vertices)]))
            m = random_submodule(inj, rng)
        elif kind == 2:
            m = random_submodule(random_quotient(a, rng), rng)
        else:
            m = direct_sum([simple(a, rng.choice(a.vertices)), random_quotient(a, rng, 1, 1)])
        if 0 < m.dim <= max_dim:
            m.name = m.name or "r"
            return m
    return simple(a, a.vertices[0])


def random_gproj(a: BoundAlgebra, rng: random.Random, max_dim: int = 12, cutoff: int = 12) -> Rep:
    """A Gorenstein projective module: Ω^d of a random module over a Gorenstein algebra."""
    g = is_gorenstein(a, cutoff)
    if not g.yes:
        raise ValueError("random_gproj needs a certified Gorenstein algebra")
    for _ in range(50):
        m = syzygy(random_module(a, rng, max_dim), g.d)
        if 0 < m.dim <= max_dim:
            return m
    return projective(a, a.vertices[0])


def random_tensor_pair(lam: BoundAlgebra, rng: random.Random, max_dim: int = 6):
    a, b = lam.tensor_of
    return random_module(a, rng, max_dim), random_module(b, rng, max_dim)

