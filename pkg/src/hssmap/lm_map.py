"""The graded map phi: P^n --> P^N, its projection inverse psi, limits at infinity and the C*-actions."""

from __future__ import annotations

import json
import math
from fractions import Fraction as Q
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ArgumentError, DomainError, InternalConsistencyError
from .exact_algebra import ProjPoint, RatMatrix, Scalar, maximal_minors, proj_point, rat
from .family import GRASSMANN, LAG, ORTH, QUADRIC, FREUDENTHAL, Grassmann, HSSFamily
from .models import (
    TangentVec,
    all_generators,
    block_sizes,
    dim,
    from_coords,
    generator_labels,
    is_tube,
    quadric_polar,
    rank,
    tangent_rank,
)
from .octonions import JordanElem, jordan_product

PointLike = Union[ProjPoint, Sequence]

ALIGNMENT_FIXTURE = "plucker_alignment.json"


def _coords(x: PointLike) -> List[Scalar]:
    if isinstance(x, ProjPoint):
        return list(x.coords)
    return [rat(c) for c in x]


def split_source(f: HSSFamily, x: PointLike) -> Tuple[Scalar, TangentVec]:
    xs = _coords(x)
    if len(xs) != dim(f) + 1:
        raise ArgumentError(f"{f.label} source points have {dim(f) + 1} coordinates, got {len(xs)}")
    return xs[0], from_coords(f, xs[1:])


def source_point(x0: Scalar, v: TangentVec) -> ProjPoint:
    return proj_point([x0, *v.coords()])


def phi_raw(f: HSSFamily, x0: Scalar, v: TangentVec) -> List[Scalar]:
    """Unnormalized coordinates (x0^r; x0^(r-1) F_0(v); ...; F_(r-1)(v))."""
    r = rank(f)
    gens = all_generators(f, v)
    out: List[Scalar] = [x0 ** r]
    for j, block in enumerate(gens, start=1):
        c = x0 ** (r - j)
        out.extend(c * g for g in block)
    return out


def phi(f: HSSFamily, x: PointLike) -> ProjPoint:
    x0, v = split_source(f, x)
    raw = phi_raw(f, x0, v)
    if not any(raw):
        raise DomainError(
            f"indeterminacy of phi on {f.label}: x0 = 0 and tangent rank "
            f"{tangent_rank(f, v)} <= r - 1 = {rank(f) - 1}"
        )
    return proj_point(raw, block_sizes(f))


def psi(f: HSSFamily, z: PointLike) -> ProjPoint:
    """Projection onto the first two blocks."""
    zs = _coords(z)
    N1 = sum(block_sizes(f))
    if len(zs) != N1:
        raise ArgumentError(f"{f.label} target points have {N1} coordinates, got {len(zs)}")
    head = zs[: dim(f) + 1]
    if not any(head):
        raise DomainError(f"psi is undefined on {f.label}: blocks 0 and 1 vanish (center of projection)")
    return proj_point(head)


def _with_blocks(f: HSSFamily, z: PointLike) -> ProjPoint:
    if isinstance(z, ProjPoint) and z.blocks is not None:
        return z
    return proj_point(_coords(z), block_sizes(f))


def single_block_point(f: HSSFamily, k: int, values: Sequence[Scalar]) -> ProjPoint:
    sizes = block_sizes(f)
    out: List[Scalar] = []
    for j, s in enumerate(sizes):
        out.extend(values if j == k else [0] * s)
    return proj_point(out, sizes)


def phi_limit_at_infinity(f: HSSFamily, v: TangentVec) -> ProjPoint:
    """Limit of phi([1, t v]) as t -> infinity: block k = F_(k-1)(v), k = rank(v)."""
    if v.is_zero():
        raise ArgumentError("the limit at infinity needs a nonzero tangent vector")
    k = tangent_rank(f, v)
    gens = all_generators(f, v)
    if not any(gens[k - 1]):
        raise InternalConsistencyError(f"F_{k - 1} vanishes on a rank-{k} vector of {f.label}")
    for j in range(k, rank(f)):
        if any(gens[j]):
            raise InternalConsistencyError(f"F_{j} does not vanish on a rank-{k} vector of {f.label}")
    return single_block_point(f, k, gens[k - 1])


@lru_cache(maxsize=None)
def _vandermonde_inverse(m: int) -> Tuple[Tuple[Q, ...], ...]:
    """Inverse of V_ij = s_i^j for s_i = 1..m, by Gauss-Jordan elimination."""
    A = [[Q(s) ** j for j in range(m)] + [Q(int(i == s - 1)) for i in range(m)] for s in range(1, m + 1)]
    for c in range(m):
        piv = next(i for i in range(c, m) if A[i][c])
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(m):
            if i != c and A[i][c]:
                fct = A[i][c]
                A[i] = [x - fct * y for x, y in zip(A[i], A[c])]
    return tuple(tuple(row[m:]) for row in A)


def flow_limit(f: HSSFamily, v: TangentVec) -> ProjPoint:
    """Black-box limit of phi([s, v]) as s -> 0.

    Each coordinate of phi([s, v]) is a polynomial of degree <= r in s; it
    is recovered exactly by interpolation at s = 1..r+1 and the limit is the
    lowest-order nonzero coefficient vector.  v is first scaled by the lcm L
    of its denominators: phi([s, Lv]) = phi([s/L, v]) up to scale, so the
    limit point is unchanged while every sample is an integer.
    """
    r = rank(f)
    L = math.lcm(*(Q(c).denominator for c in v.coords()))
    w = v.scale(L)
    samples = [[int(x) for x in phi_raw(f, s, w)] for s in range(1, r + 2)]
    V = _vandermonde_inverse(r + 1)
    ncoord = len(samples[0])
    for order in range(r + 1):
        D = math.lcm(*(x.denominator for x in V[order]))
        row = [int(x * D) for x in V[order]]
        coeff = [sum(row[i] * samples[i][c] for i in range(r + 1)) for c in range(ncoord)]
        if any(coeff):
            return proj_point(coeff, block_sizes(f))
    raise DomainError("phi([s, v]) vanishes identically")


# --- C*-actions -----------------------------------------------------------------------

def _check_t(t: Scalar) -> Scalar:
    t = rat(t)
    if t == 0:
        raise ArgumentError("the C*-parameter must be nonzero")
    return t


def cstar_act_source(t: Scalar, x: PointLike) -> ProjPoint:
    t = _check_t(t)
    xs = _coords(x)
    return proj_point([xs[0]] + [t * c for c in xs[1:]])


def cstar_act_target(t: Scalar, z: PointLike, f: Optional[HSSFamily] = None) -> ProjPoint:
    """Scale block j by t^j."""
    t = _check_t(t)
    if f is not None:
        z = _with_blocks(f, z)
    if not isinstance(z, ProjPoint) or z.blocks is None:
        raise ArgumentError("the target action needs the block structure")
    out: List[Scalar] = []
    for j, block in enumerate(z.block_values()):
        out.extend((t ** j) * c for c in block)
    return proj_point(out, z.blocks)


# --- the inversion at infinity ---------------------------------------------------------

def _drop(m: int, i: int) -> Tuple[int, ...]:
    return tuple(s for s in range(m) if s != i)


def infinity_inverse(f: HSSFamily, v: TangentVec) -> TangentVec:
    """Reassemble the block-(r-1) value F_(r-2)(v) into the tangent shape: a multiple of v^(-1)."""
    if not is_tube(f):
        raise ArgumentError(f"{f.label} is not of tube type")
    r = rank(f)
    if tangent_rank(f, v) != r:
        raise ArgumentError(f"infinity_inverse needs a rank-{r} vector")
    block = all_generators(f, v)[r - 2]
    labels = generator_labels(f, r - 1)
    t = f.tag
    if t == GRASSMANN:
        m = f.q
        val = dict(zip(labels, block))
        drop = lambda i: _drop(m, i)  # noqa: E731
        return TangentVec(f, RatMatrix([[(-1) ** (i + j) * val[(drop(j), drop(i))] for j in range(m)] for i in range(m)]))
    if t == ORTH:
        n = f.n
        val = dict(zip(labels, block))
        B = [[0] * n for _ in range(n)]
        for i, j in combinations(range(n), 2):
            S = tuple(s for s in range(n) if s not in (i, j))
            B[i][j] = (-1) ** (i + j + 1) * val[S]
            B[j][i] = -B[i][j]
        return TangentVec(f, RatMatrix(B))
    if t == LAG:
        if f.lag_minors == "principal" and r > 2:
            raise ArgumentError("principal minors do not determine the inverse")
        n = f.n
        val: Dict = dict(zip(labels, block))

        def minor(R, C):
            if (R, C) in val:
                return val[(R, C)]
            return val[(C, R)]

        drop = lambda i: _drop(n, i)  # noqa: E731
        return TangentVec(f, RatMatrix([[(-1) ** (i + j) * minor(drop(j), drop(i)) for j in range(n)] for i in range(n)]))
    if t == QUADRIC:
        e = quadric_unit(f)
        x = v.payload
        T = quadric_polar(f, x, e)
        return TangentVec(f, tuple(T * ei - xi for ei, xi in zip(e, x)))
    return TangentVec(f, JordanElem.from_coords(block))


def quadric_unit(f: HSSFamily) -> Tuple[int, ...]:
    """A vector e with q(e) = 1: e1 + e2 for the split form, e1 for the sum of squares."""
    e = [0] * f.n
    e[0] = 1
    if f.form == "split":
        e[1] = 1
    return tuple(e)


def tube_product(f: HSSFamily, a, b):
    """Product of two payloads: matrix product for the classical families, Jordan product otherwise.

    The classical result is returned as a bare matrix since it need not be
    symmetric or antisymmetric.
    """
    a = a.payload if isinstance(a, TangentVec) else a
    b = b.payload if isinstance(b, TangentVec) else b
    t = f.tag
    if t in (GRASSMANN, ORTH, LAG):
        return a @ b
    if t == QUADRIC:
        e = quadric_unit(f)
        Tx, Ty, bxy = quadric_polar(f, a, e), quadric_polar(f, b, e), quadric_polar(f, a, b)
        half = Q(1, 2)
        return tuple(rat(half * (Tx * yi + Ty * xi - bxy * ei)) for xi, yi, ei in zip(a, b, e))
    if t == FREUDENTHAL:
        return jordan_product(a, b)
    raise ArgumentError(f"{f.label} is not of tube type")


def tube_unit_multiple(f: HSSFamily, P) -> Optional[Scalar]:
    """c when the payload P is c times the unit (identity matrix, e, or the Jordan identity); else None."""
    P = P.payload if isinstance(P, TangentVec) else P
    t = f.tag
    if t in (GRASSMANN, ORTH, LAG):
        c = P[0, 0]
        return c if P == RatMatrix.identity(P.rows).scale(c) else None
    if t == QUADRIC:
        e = quadric_unit(f)
        c = P[0]
        return c if tuple(c * ei for ei in e) == tuple(P) else None
    c = P.c[0]
    return c if P == JordanElem.identity().scale(c) else None


def proportional(a: Sequence[Scalar], b: Sequence[Scalar]) -> bool:
    """Whether two nonzero vectors span the same line."""
    a, b = list(a), list(b)
    if not any(a) or not any(b) or len(a) != len(b):
        return False
    return proj_point(a) == proj_point(b)


# --- Plucker oracle ----------------------------------------------------------------------

def plucker_graph_oracle(p: int, q: int, x0: Scalar, A: RatMatrix) -> ProjPoint:
    """Maximal minors of [x0 I_q ; A], lexicographic in the row set."""
    return proj_point(plucker_raw(p, q, x0, A))


def plucker_raw(p: int, q: int, x0: Scalar, A: RatMatrix) -> List[Scalar]:
    if A.shape != (p, q):
        raise ArgumentError(f"A must be {p}x{q}")
    x0 = rat(x0)
    top = [[x0 if i == j else 0 for j in range(q)] for i in range(q)]
    return maximal_minors(RatMatrix(top + A.tolist()))


def _oracle_degree(q: int, S: Tuple[int, ...]) -> int:
    return sum(1 for s in S if s >= q)


def discover_alignment(p: int, q: int) -> List[Tuple[int, int]]:
    """For each phi coordinate i, the oracle coordinate sigma(i) and sign s_i with phi_i = s_i * oracle_sigma(i).

    Block-j labels (R, C) are probed with the 0/1 matrix E_{R,C} having
    ones at (R_t, C_t); among oracle coordinates with j rows taken from A
    it has exactly one nonzero entry.
    """
    f = Grassmann(p, q)
    row_sets = list(combinations(range(p + q), q))
    out: List[Tuple[int, int]] = [(row_sets.index(tuple(range(q))), 1)]
    for j in range(1, q + 1):
        for R, C in generator_labels(f, j):
            E = [[0] * q for _ in range(p)]
            for a, b in zip(R, C):
                E[a][b] = 1
            E = RatMatrix(E)
            orc = plucker_raw(p, q, 1, E)
            hits = [i for i, S in enumerate(row_sets) if _oracle_degree(q, S) == j and orc[i] != 0]
            if len(hits) != 1:
                raise InternalConsistencyError(f"ambiguous Plucker probe for {(R, C)}")
            mine = phi_raw(f, 1, TangentVec(f, E))
            idx = len(out)
            if mine[idx] == 0 or abs(mine[idx]) != abs(orc[hits[0]]):
                raise InternalConsistencyError(f"probe {(R, C)} does not isolate one coordinate")
            out.append((hits[0], 1 if mine[idx] == orc[hits[0]] else -1))
    if sorted(i for i, _ in out) != list(range(len(row_sets))):
        raise InternalConsistencyError("alignment is not a permutation")
    return out


def build_alignment_fixture(p_max: int = 6) -> Dict[str, object]:
    return {
        "schema_version": 1,
        "alignments": {
            f"{p},{q}": [list(pair) for pair in discover_alignment(p, q)]
            for p in range(2, p_max + 1)
            for q in range(2, p + 1)
        },
    }


def write_alignment_fixture(path: str, data: Optional[Dict[str, object]] = None) -> None:
    with open(path, "w") as fh:
        json.dump(build_alignment_fixture() if data is None else data, fh, separators=(",", ":"), sort_keys=True)
        fh.write("\n")


@lru_cache(maxsize=None)
def _load_alignments(directory: Optional[str]) -> Dict[str, List[List[int]]]:
    if directory is None:
        text = resources.files("hssmap").joinpath("data", ALIGNMENT_FIXTURE).read_text()
    else:
        with open(f"{directory}/{ALIGNMENT_FIXTURE}") as fh:
            text = fh.read()
    return json.loads(text)["alignments"]


def load_alignment(p: int, q: int, directory: Optional[str] = None) -> List[Tuple[int, int]]:
    try:
        return [tuple(x) for x in _load_alignments(directory)[f"{p},{q}"]]
    except KeyError:
        raise ArgumentError(f"no Plucker alignment stored for G({p},{q})") from None


def plucker_agrees(p: int, q: int, x0: Scalar, A: RatMatrix, alignment=None) -> bool:
    """phi_i == s_i * oracle_sigma(i) coordinatewise, with no rescaling."""
    f = Grassmann(p, q)
    alignment = alignment or load_alignment(p, q)
    mine = phi_raw(f, rat(x0), TangentVec(f, A))
    orc = plucker_raw(p, q, x0, A)
    return all(m == s * orc[i] for m, (i, s) in zip(mine, alignment))
