from __future__ import annotations

import random
from fractions import Fraction as Q
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hssmap.errors import ArgumentError, SamplingError
from hssmap.exact_algebra import RatMatrix, mat_rank
from hssmap.family import (
    CayleyPlane,
    Freudenthal,
    Grassmann,
    LagGrassmann,
    OrthGrassmann,
    Quadric,
    sweep_list,
)
from hssmap.models import (
    TangentVec,
    all_generators,
    block_sizes,
    cayley_f1,
    from_coords,
    generator_labels,
    generators,
    is_tube,
    model_info,
    random_tangent,
    random_tangent_of_rank,
    rank,
    secant_generators,
    subdiagram_pairs,
    submodel_embed,
    submodel_kinds,
    tangent_rank,
    top_invariant,
    zero_tangent,
)
from hssmap.octonions import JordanElem, Oct, jordan_rank
from hssmap.roots import build_marked_datum

SWEEP = sweep_list()
IDS = [f.label for f in SWEEP]


@pytest.mark.parametrize(
    "f, n, r, blocks",
    [
        (Grassmann(2, 2), 4, 2, (1, 4, 1)),
        (Grassmann(3, 2), 6, 2, (1, 6, 3)),
        (OrthGrassmann(5), 10, 2, (1, 10, 5)),
        (LagGrassmann(3), 6, 3, (1, 6, 6, 1)),
        (Quadric(3), 3, 2, (1, 3, 1)),
        (CayleyPlane(), 16, 2, (1, 16, 10)),
        (Freudenthal(), 27, 3, (1, 27, 27, 1)),
    ],
)
def test_model_info_examples(f, n, r, blocks):
    info = model_info(f)
    assert (info.n, info.r, info.blocks) == (n, r, blocks)
    assert info.N == sum(blocks) - 1


@pytest.mark.parametrize("f", SWEEP, ids=IDS)
def test_blocks_match_generators_and_roots(f):
    v = random_tangent(f, 1)
    gens = all_generators(f, v)
    assert tuple(len(g) for g in gens) == block_sizes(f)[1:]
    assert model_info(f).n == build_marked_datum(f).n == len(v.coords())
    for j in range(1, rank(f) + 1):
        assert len(generator_labels(f, j)) == block_sizes(f)[j]


@pytest.mark.parametrize("n", range(2, 8))
def test_lagrangian_embedding_dimension(n):
    f = LagGrassmann(n)
    assert sum(block_sizes(f)) == comb(2 * n, n) - comb(2 * n, n - 2)


def _random_symmetric(rng, n):
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = rng.randint(-4, 4)
    return RatMatrix(S)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lagrangian_basis_spans_all_symmetric_minors(n):
    """Evaluated on many symmetric matrices, all minors and the doset basis span spaces of equal dimension."""
    rng = random.Random(f"span:{n}")
    fa, fb = LagGrassmann(n, "all"), LagGrassmann(n, "basis")
    pts = [_random_symmetric(rng, n) for _ in range(3 * comb(2 * n, n))]
    for j in range(2, n + 1):
        A = RatMatrix([generators(fa, j - 1, P) for P in pts])
        B = RatMatrix([generators(fb, j - 1, P) for P in pts])
        assert mat_rank(B) == B.cols == comb(n, j) ** 2 - comb(n, j - 1) * comb(n, j + 1)
        assert mat_rank(A) == mat_rank(B)


def test_principal_minors_do_not_cut_out_rank():
    f = LagGrassmann(3, "principal")
    S = RatMatrix([[1, 1, 1], [1, 1, -1], [1, -1, 1]])
    assert tangent_rank(f, S) == 3
    assert not any(generators(f, 1, S))
    assert any(generators(LagGrassmann(3), 1, S))


@pytest.mark.parametrize("f", SWEEP, ids=IDS)
def test_secant_equals_rank(f):
    r = rank(f)
    rng = random.Random(f"test-secant:{f.key}")
    for trial in range(3 * (r + 1)):
        k0 = trial % (r + 1)
        v = random_tangent_of_rank(f, k0, rng)
        assert tangent_rank(f, v) == k0
        for k in range(1, r):
            assert (not any(secant_generators(f, k, v))) == (k0 <= k)


@pytest.mark.parametrize("f", [f for f in SWEEP if is_tube(f)], ids=lambda f: f.label)
def test_tube_top_invariant_detects_full_rank(f):
    r = rank(f)
    rng = random.Random(f"top:{f.key}")
    for k in range(r + 1):
        v = random_tangent_of_rank(f, k, rng)
        assert (top_invariant(f, v) != 0) == (k == r)


def test_top_invariant_rejects_nontube():
    with pytest.raises(ArgumentError):
        top_invariant(Grassmann(3, 2), random_tangent(Grassmann(3, 2), 0))


def _cayley_jacobian_rank(v: TangentVec) -> int:
    f = v.family
    F = lambda w: cayley_f1(*w.payload)
    base = [0] * 16
    cols = []
    for i in range(16):
        h = list(base)
        h[i] = 1
        hv = from_coords(f, h)
        cols.append([a - b - c for a, b, c in zip(F(v + hv), F(v), F(hv))])
    return mat_rank(RatMatrix(cols))


def test_cayley_rank_against_jordan_oracle_and_jacobian():
    f = CayleyPlane()
    rng = random.Random("cayley")
    for k in (0, 1, 2):
        for _ in range(15):
            v = random_tangent_of_rank(f, k, rng)
            u, w = v.payload
            assert jordan_rank(JordanElem((0, 0, 0), u, w, Oct())) == k
    for _ in range(5):
        assert _cayley_jacobian_rank(random_tangent_of_rank(f, 1, rng)) == 5
        # F_1 lands in the cone N(z) = ab (norm multiplicativity), a 9-dimensional quadric
        assert _cayley_jacobian_rank(random_tangent_of_rank(f, 2, rng)) == 9


@pytest.mark.parametrize("f", [Grassmann(3, 3), OrthGrassmann(6), LagGrassmann(3), Quadric(5), CayleyPlane(), Freudenthal()], ids=lambda f: f.label)
def test_rank_subadditive(f):
    rng = random.Random(f"sub:{f.key}")
    r = rank(f)
    for _ in range(20):
        a = random_tangent_of_rank(f, rng.randint(0, r), rng)
        b = random_tangent_of_rank(f, rng.randint(0, r), rng)
        assert tangent_rank(f, a + b) <= min(r, tangent_rank(f, a) + tangent_rank(f, b))


@pytest.mark.parametrize("f, sub, kind", subdiagram_pairs(), ids=lambda x: getattr(x, "label", x))
def test_submodel_embedding_preserves_rank(f, sub, kind):
    assert kind in submodel_kinds(f, sub)
    rng = random.Random(f"embed:{f.key}:{sub.key}:{kind}")
    for k in range(rank(sub) + 1):
        vs = random_tangent_of_rank(sub, k, rng)
        v = submodel_embed(f, sub, vs, kind)
        assert tangent_rank(f, v) == k
        gf, gs = all_generators(f, v), all_generators(sub, vs)
        for j in range(1, rank(sub)):
            assert (not any(gf[j])) == (not any(gs[j]))


def test_submodel_errors():
    with pytest.raises(ArgumentError):
        submodel_embed(CayleyPlane(), Quadric(3), zero_tangent(Quadric(3)))
    with pytest.raises(ArgumentError):
        submodel_embed(Grassmann(3, 3), Grassmann(2, 2), zero_tangent(Grassmann(2, 2)), "sideways")
    assert submodel_kinds(CayleyPlane(), Quadric(8)) == ("balanced",)


def test_sampling_examples_and_errors():
    rng = random.Random(3)
    f = Quadric(4, "sum-squares")
    assert tangent_rank(f, random_tangent_of_rank(f, 2, rng)) == 2
    with pytest.raises(SamplingError):
        random_tangent_of_rank(f, 1, rng)
    with pytest.raises(ArgumentError):
        random_tangent_of_rank(Grassmann(3, 2), 3, rng)
    assert tangent_rank(Quadric(4), random_tangent_of_rank(Quadric(4), 1, rng)) == 1


def test_generator_errors():
    f = Grassmann(3, 2)
    v = random_tangent(f, 0)
    with pytest.raises(ArgumentError):
        generators(f, 2, v)
    with pytest.raises(ArgumentError):
        secant_generators(f, 0, v)
    with pytest.raises(ArgumentError):
        generator_labels(f, 3)
    with pytest.raises(ArgumentError):
        TangentVec(f, RatMatrix([[1, 2]]))
    with pytest.raises(ArgumentError):
        TangentVec(OrthGrassmann(4), RatMatrix.identity(4))


def test_quadric_generators_example():
    f = Quadric(3, "sum-squares")
    v = from_coords(f, [1, 2, Q(1, 2)])
    assert all_generators(f, v) == [[1, 2, Q(1, 2)], [Q(21, 4)]]
    g = Quadric(4)
    assert all_generators(g, from_coords(g, [1, 1, 0, 0]))[1] == [1]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([Grassmann(3, 2), OrthGrassmann(5), LagGrassmann(3), Quadric(4), CayleyPlane(), Freudenthal()]), st.integers(0, 10**6))
def test_tangent_json_roundtrip(f, seed):
    v = random_tangent(f, seed)
    assert TangentVec.from_json(v.to_json()) == v
    assert TangentVec.from_json(v.to_json()["payload"], f) == v
    assert from_coords(f, v.coords()) == v
