from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hssmap.errors import ArgumentError, DomainError
from hssmap.exact_algebra import RatMatrix, proj_point
from hssmap.family import Freudenthal, Grassmann, LagGrassmann, OrthGrassmann, Quadric, sweep_list
from hssmap.lm_map import (
    _load_alignments,
    cstar_act_source,
    cstar_act_target,
    discover_alignment,
    flow_limit,
    infinity_inverse,
    load_alignment,
    phi,
    phi_limit_at_infinity,
    phi_raw,
    plucker_agrees,
    plucker_graph_oracle,
    plucker_raw,
    proportional,
    psi,
    source_point,
    tube_product,
    tube_unit_multiple,
)
from hssmap.models import (
    TangentVec,
    all_generators,
    from_coords,
    is_tube,
    random_rational,
    random_tangent,
    random_tangent_of_rank,
    rank,
)
from hssmap.octonions import JordanElem, jordan_adj, jordan_det

SWEEP = sweep_list()
IDS = [f.label for f in SWEEP]
TUBE = [f for f in SWEEP if is_tube(f)]


def test_quadric_example():
    f = Quadric(3, "sum-squares")
    assert list(phi(f, [1, 1, 0, 0]).coords) == [1, 1, 0, 0, 1]
    assert list(phi(f, [2, 1, 1, 1]).coords) == [1, Q(1, 2), Q(1, 2), Q(1, 2), Q(3, 4)]
    with pytest.raises(DomainError):
        psi(f, [0, 0, 0, 0, 1])
    lim = phi_limit_at_infinity(f, from_coords(f, [1, 0, 0]))
    assert list(lim.coords) == [0, 0, 0, 0, 1]
    assert lim.blocks == (1, 3, 1)


def test_grassmann_example_blocks():
    f = Grassmann(2, 2)
    z = phi(f, [1, 1, 2, 3, 4])
    assert [tuple(b) for b in z.block_values()] == [(1,), (1, 2, 3, 4), (-2,)]


def test_phi_indeterminacy_names_rank():
    f = Grassmann(3, 3)
    v = random_tangent_of_rank(f, 2, random.Random(0))
    with pytest.raises(DomainError, match="rank 2"):
        phi(f, source_point(0, v))
    with pytest.raises(ArgumentError):
        phi(f, [1, 2, 3])


@pytest.mark.parametrize("f", SWEEP, ids=IDS)
def test_psi_inverts_phi(f):
    rng = random.Random(f"psi:{f.key}")
    for _ in range(8):
        x0 = random_rational(rng) or 1
        x = source_point(x0, random_tangent(f, rng))
        assert psi(f, phi(f, x)) == x


@pytest.mark.parametrize("f", SWEEP, ids=IDS)
def test_equivariance(f):
    rng = random.Random(f"eq:{f.key}")
    for t in (2, Q(-1, 3), 5):
        x = source_point(random_rational(rng) or 1, random_tangent(f, rng))
        assert phi(f, cstar_act_source(t, x)) == cstar_act_target(t, phi(f, x))


@pytest.mark.parametrize("f", SWEEP, ids=IDS)
def test_limits_are_single_block_and_fixed(f):
    rng = random.Random(f"lim:{f.key}")
    gens_of = lambda v: all_generators(f, v)
    for k in range(1, rank(f) + 1):
        v = random_tangent_of_rank(f, k, rng)
        z = phi_limit_at_infinity(f, v)
        assert z == flow_limit(f, v)
        assert [j for j, b in enumerate(z.block_values()) if any(b)] == [k]
        assert cstar_act_target(7, z) == z
        F = gens_of(v)[k - 1]
        if len(F) > 1:
            assert proj_point(F) == proj_point(z.block(k))


def test_limit_errors():
    with pytest.raises(ArgumentError):
        phi_limit_at_infinity(Quadric(3), from_coords(Quadric(3), [0, 0, 0]))
    with pytest.raises(ArgumentError):
        cstar_act_target(0, [1, 2])


def test_cstar_target_example():
    f = Quadric(3, "sum-squares")
    z = cstar_act_target(2, [1, 1, 0, 0, 1], f)
    assert list(z.coords) == [1, 2, 0, 0, 4]
    assert cstar_act_source(3, [1, 1, 0, 0]) == proj_point([1, 3, 0, 0])


def test_inverse_examples():
    f = LagGrassmann(3)
    w = infinity_inverse(f, TangentVec(f, RatMatrix.diag([1, 2, 3])))
    assert proportional(w.coords(), TangentVec(f, RatMatrix.diag([6, 3, 2])).coords())
    e7 = Freudenthal()
    w = infinity_inverse(e7, TangentVec(e7, JordanElem.diag(1, 1, 2)))
    assert w.payload == JordanElem.diag(2, 2, 1)
    A = RatMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]])
    o = OrthGrassmann(4)
    w = infinity_inverse(o, TangentVec(o, A))
    assert tube_unit_multiple(o, tube_product(o, A, w)) not in (None, 0)


def test_inverse_errors():
    with pytest.raises(ArgumentError):
        infinity_inverse(Grassmann(3, 2), random_tangent(Grassmann(3, 2), 0))
    f = Grassmann(3, 3)
    with pytest.raises(ArgumentError):
        infinity_inverse(f, random_tangent_of_rank(f, 2, random.Random(1)))


@pytest.mark.parametrize("f", TUBE, ids=lambda f: f.label)
def test_inversion_at_infinity(f):
    rng = random.Random(f"inv:{f.key}")
    for _ in range(6):
        v = random_tangent_of_rank(f, rank(f), rng)
        w = infinity_inverse(f, v)
        c = tube_unit_multiple(f, tube_product(f, v, w))
        assert c not in (None, 0)
        assert proportional(infinity_inverse(f, w).coords(), v.coords())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_freudenthal_inverse_scaling(seed):
    f = Freudenthal()
    m = random_tangent(f, seed).payload
    assert jordan_adj(jordan_adj(m)) == m.scale(jordan_det(m))
    if jordan_det(m):
        w = infinity_inverse(f, TangentVec(f, m))
        assert tube_unit_multiple(f, tube_product(f, m, w)) == jordan_det(m)


def test_plucker_small_example():
    A = RatMatrix([[1, 2], [3, 4]])
    assert plucker_raw(2, 2, 1, A) == [1, 2, 4, -1, -3, -2]
    z = plucker_graph_oracle(2, 2, 1, A)
    ours = phi(Grassmann(2, 2), [1, 1, 2, 3, 4])
    assert sorted(abs(c) for c in z.coords) == sorted(abs(c) for c in ours.coords)
    assert plucker_agrees(2, 2, 1, A)


@pytest.mark.parametrize("pq", [(2, 2), (3, 2), (3, 3), (4, 3)])
def test_stored_alignment_is_rediscovered(pq):
    assert discover_alignment(*pq) == load_alignment(*pq)


def test_alignment_fixture_covers_sweep():
    assert set(_load_alignments(None)) == {f"{p},{q}" for p in range(2, 7) for q in range(2, p + 1)}
    with pytest.raises(ArgumentError):
        load_alignment(7, 2)


@pytest.mark.parametrize("f", [Grassmann(p, q) for p in range(2, 7) for q in range(2, p + 1)], ids=lambda f: f.label)
def test_plucker_agreement(f):
    rng = random.Random(f"pl:{f.key}")
    align = load_alignment(f.p, f.q)
    for i in range(5):
        x0 = 0 if i == 4 else (random_rational(rng) or 1)
        A = (random_tangent_of_rank(f, f.q, rng) if x0 == 0 else random_tangent(f, rng)).payload
        assert plucker_agrees(f.p, f.q, x0, A, align)


def test_phi_raw_grading():
    f = Grassmann(3, 2)
    v = random_tangent(f, 4)
    raw1 = phi_raw(f, 1, v)
    raw_s = phi_raw(f, 2, v)
    blocks = (1, 6, 3)
    pos = 0
    for j, b in enumerate(blocks):
        for i in range(pos, pos + b):
            assert raw_s[i] == raw1[i] * 2 ** (2 - j)
        pos += b
