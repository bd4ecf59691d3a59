"""Tangent-space models of the six families: shapes, ranks, and secant generators.

Block j of the target projective space (j >= 1) is spanned by the
generator list F_{j-1}; F_0 is the tangent coordinate list itself and
F_k (k >= 1) cuts out the vectors of rank <= k.
"""

from __future__ import annotations

import random
from fractions import Fraction as Q
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, List, Optional, Sequence, Tuple, Union

from . import tables
from .errors import ArgumentError, InternalConsistencyError, SamplingError
from .exact_algebra import (
    RatMatrix,
    Scalar,
    det,
    mat_rank,
    minor_table,
    nullspace,
    pfaffian_table,
    rat,
    rat_str,
)
from .family import (
    CAYLEY,
    FREUDENTHAL,
    GRASSMANN,
    LAG,
    ORTH,
    QUADRIC,
    CayleyPlane,
    Freudenthal,
    HSSFamily,
    from_key,
)
from .octonions import (
    ZERO as OZERO,
    JordanElem,
    Oct,
    jordan_adj,
    jordan_det,
    jordan_rank,
    oct_conj,
    oct_mul,
    oct_norm,
    op2_chart,
)

Payload = Union[RatMatrix, Tuple[Scalar, ...], Tuple[Oct, Oct], JordanElem]
Seed = Union[int, str, random.Random, None]


# --- family invariants --------------------------------------------------------

dim = tables.dim_n
rank = tables.rank
is_tube = tables.tube


def _lag_count(n: int, j: int, mode: str) -> int:
    if j == 1 or mode == "all":
        c = comb(n, j)
        return c * (c + 1) // 2
    if mode == "principal":
        return comb(n, j)
    return comb(n, j) ** 2 - comb(n, j - 1) * comb(n, j + 1)


def block_sizes(f: HSSFamily) -> Tuple[int, ...]:
    t = f.tag
    r = rank(f)
    if t == GRASSMANN:
        return tuple(comb(f.p, j) * comb(f.q, j) for j in range(r + 1))
    if t == ORTH:
        return tuple(comb(f.n, 2 * j) for j in range(r + 1))
    if t == LAG:
        return (1,) + tuple(_lag_count(f.n, j, f.lag_minors) for j in range(1, r + 1))
    if t == QUADRIC:
        return (1, f.n, 1)
    if t == CAYLEY:
        return (1, 16, 10)
    return (1, 27, 27, 1)


@dataclass(frozen=True)
class ModelInfo:
    n: int
    r: int
    N: int
    blocks: Tuple[int, ...]
    tube: bool

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "N": self.N, "blocks": list(self.blocks), "tube": self.tube}


def model_info(f: HSSFamily) -> ModelInfo:
    b = block_sizes(f)
    return ModelInfo(dim(f), rank(f), sum(b) - 1, b, is_tube(f))


# --- tangent vectors -------------------------------------------------------------

@dataclass(frozen=True)
class TangentVec:
    """A tangent vector at the base point, in the family's natural shape."""

    family: HSSFamily
    payload: Payload

    def __post_init__(self):
        _check_payload(self.family, self.payload)

    def coords(self) -> Tuple[Scalar, ...]:
        return tangent_coords(self.family, self.payload)

    def is_zero(self) -> bool:
        return not any(self.coords())

    def __add__(self, o: "TangentVec") -> "TangentVec":
        if o.family != self.family:
            raise ArgumentError("cannot add tangent vectors of different families")
        return from_coords(self.family, [a + b for a, b in zip(self.coords(), o.coords())])

    def scale(self, c: Scalar) -> "TangentVec":
        c = rat(c)
        return from_coords(self.family, [c * a for a in self.coords()])

    def to_json(self) -> dict:
        return {"family": self.family.tag, "params": self.family.params, "payload": payload_to_json(self)}

    @classmethod
    def from_json(cls, d: dict, family: Optional[HSSFamily] = None) -> "TangentVec":
        if family is None:
            family = family_from_json(d)
        return cls(family, payload_from_json(family, d["payload"] if "payload" in d else d))


def family_from_json(d: dict) -> HSSFamily:
    try:
        params = dict(d.get("params", {}))
        return HSSFamily(d["family"], **params)
    except (KeyError, TypeError) as exc:
        raise ArgumentError(f"malformed family description: {exc}") from None


def _check_payload(f: HSSFamily, P: Any) -> None:
    t = f.tag
    if t in (GRASSMANN, ORTH, LAG):
        if not isinstance(P, RatMatrix):
            raise ArgumentError(f"{f.label} tangent vectors are matrices")
        shape = (f.p, f.q) if t == GRASSMANN else (f.n, f.n)
        if P.shape != shape:
            raise ArgumentError(f"{f.label} tangent matrix must be {shape[0]}x{shape[1]}")
        if t == ORTH and not P.is_antisymmetric():
            raise ArgumentError("orthogonal Grassmannian tangent matrix must be antisymmetric")
        if t == LAG and not P.is_symmetric():
            raise ArgumentError("Lagrangian Grassmannian tangent matrix must be symmetric")
    elif t == QUADRIC:
        if not isinstance(P, tuple) or len(P) != f.n:
            raise ArgumentError(f"quadric tangent vector must have {f.n} coordinates")
    elif t == CAYLEY:
        if not (isinstance(P, tuple) and len(P) == 2 and all(isinstance(o, Oct) for o in P)):
            raise ArgumentError("Cayley plane tangent vector is a pair of octonions")
    elif not isinstance(P, JordanElem):
        raise ArgumentError("E7/P7 tangent vector is a Jordan element")


def tangent_coords(f: HSSFamily, P: Payload) -> Tuple[Scalar, ...]:
    """Canonical coordinate order: row-major; a_ij (i<j); a_ij (i<=j); vector; u then w; Jordan order."""
    t = f.tag
    if t == GRASSMANN:
        return P.entries
    if t == ORTH:
        return tuple(P[i, j] for i, j in combinations(range(f.n), 2))
    if t == LAG:
        return tuple(P[i, j] for i in range(f.n) for j in range(i, f.n))
    if t == QUADRIC:
        return P
    if t == CAYLEY:
        return P[0].coords() + P[1].coords()
    return P.coords()


def from_coords(f: HSSFamily, xs: Sequence) -> TangentVec:
    xs = [rat(x) for x in xs]
    if len(xs) != dim(f):
        raise ArgumentError(f"{f.label} needs {dim(f)} tangent coordinates, got {len(xs)}")
    t = f.tag
    if t == GRASSMANN:
        return TangentVec(f, RatMatrix.from_entries(f.p, f.q, xs))
    if t in (ORTH, LAG):
        n = f.n
        a = [[0] * n for _ in range(n)]
        pairs = combinations(range(n), 2) if t == ORTH else ((i, j) for i in range(n) for j in range(i, n))
        for (i, j), x in zip(pairs, xs):
            a[i][j] = x
            a[j][i] = -x if t == ORTH else x
        return TangentVec(f, RatMatrix(a))
    if t == QUADRIC:
        return TangentVec(f, tuple(xs))
    if t == CAYLEY:
        return TangentVec(f, (Oct.from_coords(xs[:8]), Oct.from_coords(xs[8:])))
    return TangentVec(f, JordanElem.from_coords(xs))


def zero_tangent(f: HSSFamily) -> TangentVec:
    return from_coords(f, [0] * dim(f))


def payload_to_json(v: TangentVec) -> Any:
    t = v.family.tag
    P = v.payload
    if t in (GRASSMANN, ORTH, LAG):
        return P.to_json()
    if t == QUADRIC:
        return [rat_str(x) for x in P]
    if t == CAYLEY:
        return {"u": P[0].to_json(), "w": P[1].to_json()}
    return P.to_json()


def payload_from_json(f: HSSFamily, d: Any) -> Payload:
    t = f.tag
    try:
        if t in (GRASSMANN, ORTH, LAG):
            return RatMatrix(d)
        if t == QUADRIC:
            return tuple(rat(x) for x in d)
        if t == CAYLEY:
            return (Oct.from_json(d["u"]), Oct.from_json(d["w"]))
        return JordanElem.from_json(d)
    except (KeyError, TypeError, IndexError) as exc:
        raise ArgumentError(f"malformed {f.label} payload: {exc}") from None


def _payload(f: HSSFamily, v: Union[TangentVec, Payload]) -> Payload:
    if isinstance(v, TangentVec):
        if v.family.tag != f.tag:
            raise ArgumentError(f"tangent vector of {v.family.label} passed to {f.label}")
        v = v.payload
    _check_payload(f, v)
    return v


# --- quadratic forms and the Cayley plane generators ------------------------

def quadric_form(f: HSSFamily, x: Sequence[Scalar]) -> Scalar:
    """Split form x1x2 + x3x4 + ... (+ x_n^2 if n odd), or the sum of squares."""
    if f.form == "sum-squares":
        return sum(a * a for a in x)
    n = len(x)
    total = sum(x[i] * x[i + 1] for i in range(0, n - 1, 2))
    if n % 2:
        total += x[-1] * x[-1]
    return total


def quadric_polar(f: HSSFamily, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """b(x, y) = q(x + y) - q(x) - q(y)."""
    return quadric_form(f, [a + b for a, b in zip(x, y)]) - quadric_form(f, x) - quadric_form(f, y)


def cayley_f1(u: Oct, w: Oct) -> Tuple[Scalar, ...]:
    """(N(u), N(w), coordinates of conj(u) w): the quadrics through the rank-one cone."""
    return (oct_norm(u), oct_norm(w)) + oct_mul(oct_conj(u), w).coords()


# --- generator labels ----------------------------------------------------------

def _doset(R: Tuple[int, ...], C: Tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(R, C))


def lag_labels(n: int, j: int, mode: str) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(row set, column set) pairs of the symmetric j-minors used in block j."""
    subsets = list(combinations(range(n), j))
    if mode == "principal" and j > 1:
        return [(S, S) for S in subsets]
    if mode == "all" or j == 1:
        return [(R, C) for R in subsets for C in subsets if R <= C]
    return [(R, C) for R in subsets for C in subsets if R <= C and _doset(R, C)]


def generator_labels(f: HSSFamily, j: int) -> List[Any]:
    """Labels of the coordinates in block j (1 <= j <= r)."""
    r = rank(f)
    if not 1 <= j <= r:
        raise ArgumentError(f"block {j} outside [1, {r}]")
    t = f.tag
    if t == GRASSMANN:
        return [(R, C) for R in combinations(range(f.p), j) for C in combinations(range(f.q), j)]
    if t == ORTH:
        return list(combinations(range(f.n), 2 * j))
    if t == LAG:
        return lag_labels(f.n, j, f.lag_minors)
    if t == QUADRIC:
        return [f"x{i + 1}" for i in range(f.n)] if j == 1 else ["q"]
    if t == CAYLEY:
        if j == 1:
            return [f"u{i}" for i in range(8)] + [f"w{i}" for i in range(8)]
        return ["N(u)", "N(w)"] + [f"(u*w){i}" for i in range(8)]
    if j == 3:
        return ["det"]
    prefix = "" if j == 1 else "adj."
    return [f"{prefix}c{i}" for i in (1, 2, 3)] + [f"{prefix}{s}{i}" for s in "xyz" for i in range(8)]


# --- generators ----------------------------------------------------------------

def all_generators(f: HSSFamily, v: Union[TangentVec, Payload]) -> List[List[Scalar]]:
    """[F_0(v), F_1(v), ..., F_{r-1}(v)] computed in one pass."""
    P = _payload(f, v)
    t = f.tag
    r = rank(f)
    if t == GRASSMANN:
        table = minor_table(P, r)
        return [
            [table[j][(R, C)] for R, C in generator_labels(f, j)] for j in range(1, r + 1)
        ]
    if t == ORTH:
        table = pfaffian_table(P, 2 * r)
        return [[table[S] for S in generator_labels(f, j)] for j in range(1, r + 1)]
    if t == LAG:
        table = minor_table(P, r)
        return [[table[j][lab] for lab in generator_labels(f, j)] for j in range(1, r + 1)]
    if t == QUADRIC:
        return [list(P), [quadric_form(f, P)]]
    if t == CAYLEY:
        return [list(P[0].coords() + P[1].coords()), list(cayley_f1(*P))]
    return [list(P.coords()), list(jordan_adj(P).coords()), [jordan_det(P)]]


def generators(f: HSSFamily, k: int, v: Union[TangentVec, Payload]) -> List[Scalar]:
    """F_k(v) for 0 <= k <= r - 1 (F_0 is the coordinate list)."""
    r = rank(f)
    if not 0 <= k <= r - 1:
        raise ArgumentError(f"k={k} outside [0, {r - 1}] for {f.label}")
    P = _payload(f, v)
    t = f.tag
    if t == GRASSMANN:
        if k == 0:
            return list(P.entries)
        level = minor_table(P, k + 1)[k + 1]
        return [level[lab] for lab in generator_labels(f, k + 1)]
    if t == ORTH:
        table = pfaffian_table(P, 2 * k + 2)
        return [table[S] for S in generator_labels(f, k + 1)]
    if t == LAG:
        level = minor_table(P, k + 1)[k + 1]
        return [level[lab] for lab in generator_labels(f, k + 1)]
    return all_generators(f, P)[k]


def secant_generators(f: HSSFamily, k: int, v: Union[TangentVec, Payload]) -> List[Scalar]:
    """Evaluate the generators F_k of the rank <= k locus at v, 1 <= k <= r - 1."""
    if not 1 <= k <= rank(f) - 1:
        raise ArgumentError(f"secant index k={k} outside [1, {rank(f) - 1}] for {f.label}")
    return generators(f, k, v)


def top_invariant(f: HSSFamily, v: Union[TangentVec, Payload]) -> Scalar:
    """The degree-r polynomial of a tube family: det, Pfaffian, q or the cubic norm."""
    if not is_tube(f):
        raise ArgumentError(f"{f.label} is not of tube type")
    P = _payload(f, v)
    t = f.tag
    if t in (GRASSMANN, LAG):
        return det(P)
    if t == ORTH:
        return pfaffian_table(P, f.n)[tuple(range(f.n))]
    if t == QUADRIC:
        return quadric_form(f, P)
    return jordan_det(P)


def tangent_rank(f: HSSFamily, v: Union[TangentVec, Payload]) -> int:
    P = _payload(f, v)
    t = f.tag
    if t in (GRASSMANN, LAG):
        return mat_rank(P)
    if t == ORTH:
        return mat_rank(P) // 2
    if t == QUADRIC:
        if not any(P):
            return 0
        return 1 if quadric_form(f, P) == 0 else 2
    if t == CAYLEY:
        if P[0].is_zero() and P[1].is_zero():
            return 0
        return 1 if not any(cayley_f1(*P)) else 2
    return jordan_rank(P)


# --- random sampling -------------------------------------------------------------

def make_rng(seed: Seed) -> random.Random:
    """Mersenne Twister (Python's ``random.Random``) seeded from an int or string."""
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def _rand_int(rng: random.Random, lo: int = -3, hi: int = 3, nonzero: bool = False) -> int:
    while True:
        x = rng.randint(lo, hi)
        if x or not nonzero:
            return x


def random_rational(rng: random.Random, num: int = 5, den: int = 3) -> Scalar:
    """Small integer, or with probability 0.3 a small fraction."""
    if rng.random() < 0.3:
        return rat(Q(rng.randint(-num, num), rng.randint(1, den)))
    return rng.randint(-num, num)


def random_invertible(rng: random.Random, n: int) -> RatMatrix:
    while True:
        M = RatMatrix([[_rand_int(rng) for _ in range(n)] for _ in range(n)])
        if det(M) != 0:
            return M


def random_tangent(f: HSSFamily, seed: Seed = None) -> TangentVec:
    """Uniformly random small rational coordinates (generic rank with high probability)."""
    rng = make_rng(seed)
    return from_coords(f, [random_rational(rng) for _ in range(dim(f))])


def _random_null_oct(rng: random.Random) -> Oct:
    """Nonzero octonion of norm zero: solve ab = u.v for b."""
    while True:
        u = tuple(_rand_int(rng) for _ in range(3))
        v = tuple(_rand_int(rng) for _ in range(3))
        dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
        if rng.random() < 0.2:
            # a = 0 forces u.v = 0; keep b free
            if dot == 0 and (any(u) or any(v)):
                return Oct(0, _rand_int(rng), u, v)
            continue
        a = _rand_int(rng, nonzero=True)
        x = Oct(a, rat(Q(dot, a)), u, v)
        if oct_norm(x) != 0:
            raise InternalConsistencyError("null octonion construction failed")
        return x


def _left_conj_matrix(u: Oct) -> RatMatrix:
    """Matrix of w -> conj(u) w in octonion coordinates."""
    ub = oct_conj(u)
    basis = [Oct.from_coords([1 if i == k else 0 for i in range(8)]) for k in range(8)]
    cols = [oct_mul(ub, e).coords() for e in basis]
    return RatMatrix([[cols[j][i] for j in range(8)] for i in range(8)])


def _random_kernel_vec(rng: random.Random, M: RatMatrix) -> Tuple[Scalar, ...]:
    basis = nullspace(M)
    while True:
        cs = [_rand_int(rng) for _ in basis]
        w = tuple(sum((c * b[i] for c, b in zip(cs, basis)), 0) for i in range(M.cols))
        if any(w):
            return w


def _cayley_rank_one(rng: random.Random) -> Tuple[Oct, Oct]:
    for _ in range(100):
        choice = rng.random()
        if choice < 0.15:
            u, w = OZERO, _random_null_oct(rng)
        elif choice < 0.3:
            u, w = _random_null_oct(rng), OZERO
        else:
            u = _random_null_oct(rng)
            w = Oct.from_coords(_random_kernel_vec(rng, _left_conj_matrix(u)))
        if oct_norm(w) == 0 and not any(cayley_f1(u, w)):
            return u, w
    raise SamplingError("could not sample a rank-one Cayley plane tangent")


_PERMS = ((0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1))


def _permute_jordan(m: JordanElem, perm: Tuple[int, int, int]) -> JordanElem:
    """Conjugate by a permutation matrix: entry (i, j) moves to (perm[i], perm[j])."""
    M = m.matrix()
    out = [[OZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            out[perm[i]][perm[j]] = M[i][j]
    return JordanElem.from_matrix(out)


def _jordan_rank_one(rng: random.Random) -> JordanElem:
    u = Oct.from_coords([_rand_int(rng, -2, 2) for _ in range(8)])
    w = Oct.from_coords([_rand_int(rng, -2, 2) for _ in range(8)])
    m = op2_chart(u, w).scale(_rand_int(rng, nonzero=True))
    return _permute_jordan(m, rng.choice(_PERMS))


def random_tangent_of_rank(f: HSSFamily, k: int, seed: Seed = None, retries: int = 50) -> TangentVec:
    """A random tangent vector of exact rank k, obtained from a normal form by a random group sweep."""
    r = rank(f)
    if not 0 <= k <= r:
        raise ArgumentError(f"rank {k} outside [0, {r}] for {f.label}")
    rng = make_rng(seed)
    if k == 0:
        return zero_tangent(f)
    t = f.tag
    out: Optional[TangentVec] = None
    if t == GRASSMANN:
        E = RatMatrix([[1 if i == j and i < k else 0 for j in range(f.q)] for i in range(f.p)])
        out = TangentVec(f, random_invertible(rng, f.p) @ E @ random_invertible(rng, f.q))
    elif t == ORTH:
        J = [[0] * f.n for _ in range(f.n)]
        for i in range(k):
            c = _rand_int(rng, nonzero=True)
            J[2 * i][2 * i + 1] = c
            J[2 * i + 1][2 * i] = -c
        P = random_invertible(rng, f.n)
        out = TangentVec(f, P @ RatMatrix(J) @ P.T)
    elif t == LAG:
        D = RatMatrix.diag([_rand_int(rng, nonzero=True) if i < k else 0 for i in range(f.n)])
        P = random_invertible(rng, f.n)
        out = TangentVec(f, P @ D @ P.T)
    elif t == QUADRIC:
        out = _quadric_of_rank(f, k, rng, retries)
    elif t == CAYLEY:
        if k == 1:
            out = TangentVec(f, _cayley_rank_one(rng))
        else:
            for _ in range(retries):
                if rng.random() < 0.5:
                    a, b = _cayley_rank_one(rng), _cayley_rank_one(rng)
                    cand = (a[0] + b[0], a[1] + b[1])
                else:
                    cand = random_tangent(f, rng).payload
                if tangent_rank(f, cand) == 2:
                    out = TangentVec(f, cand)
                    break
    else:
        for _ in range(retries):
            m = JordanElem()
            for _ in range(k):
                m = m + _jordan_rank_one(rng)
            if jordan_rank(m) == k:
                out = TangentVec(f, m)
                break
    if out is None:
        raise SamplingError(f"no rank-{k} sample for {f.label} after {retries} attempts")
    if tangent_rank(f, out) != k:
        raise InternalConsistencyError(f"sampled {f.label} vector does not have rank {k}")
    return out


def _quadric_of_rank(f: HSSFamily, k: int, rng: random.Random, retries: int) -> TangentVec:
    n = f.n
    if k == 2:
        for _ in range(retries):
            x = [random_rational(rng) for _ in range(n)]
            if quadric_form(f, x) != 0:
                return TangentVec(f, tuple(x))
        raise SamplingError("no anisotropic quadric vector found")
    if f.form == "sum-squares":
        raise SamplingError("a sum of squares has no nonzero rational isotropic vectors")
    for _ in range(retries):
        x = [random_rational(rng) for _ in range(n)]
        pairs = n // 2
        i = 2 * rng.randrange(pairs)
        if x[i] == 0:
            x[i] = rng.choice((1, -1, 2))
        x[i + 1] = 0
        rest = quadric_form(f, x)
        x[i + 1] = rat(-Q(rest) / x[i])
        if any(x) and quadric_form(f, x) == 0:
            return TangentVec(f, tuple(x))
    raise SamplingError("no isotropic quadric vector found")


# --- subdiagram embeddings ------------------------------------------------------------

def _pad(M: RatMatrix, rows: int, cols: int, trailing: bool) -> RatMatrix:
    out = [[0] * cols for _ in range(rows)]
    r0 = rows - M.rows if trailing else 0
    c0 = cols - M.cols if trailing else 0
    for i in range(M.rows):
        for j in range(M.cols):
            out[r0 + i][c0 + j] = M[i, j]
    return RatMatrix(out)


def submodel_kinds(f: HSSFamily, sub: HSSFamily) -> Tuple[str, ...]:
    """Which of 'balanced' / 'characteristic' embed ``sub`` into ``f``."""
    kinds = []
    for kind in ("balanced", "characteristic"):
        try:
            _check_sub(f, sub, kind)
            kinds.append(kind)
        except ArgumentError:
            pass
    return tuple(kinds)


def _check_sub(f: HSSFamily, sub: HSSFamily, kind: str) -> None:
    if kind not in ("balanced", "characteristic"):
        raise ArgumentError(f"unknown subdiagram kind {kind!r}")
    ok = False
    if f.tag == sub.tag == GRASSMANN:
        if kind == "balanced":
            ok = sub.p == sub.q and sub.q <= f.q
        else:
            ok = f.p - sub.p == f.q - sub.q >= 1
    elif f.tag == sub.tag == ORTH:
        if kind == "balanced":
            ok = sub.n % 2 == 0 and sub.n < f.n
        else:
            ok = sub.n < f.n and (f.n - sub.n) % 2 == 0
    elif f.tag == sub.tag == LAG:
        ok = 2 <= sub.n < f.n and sub.lag_minors == f.lag_minors
    elif sub.tag == QUADRIC and sub.form == "split":
        if f.tag == CAYLEY:
            ok = sub.n == 8 and kind == "balanced"
        elif f.tag == FREUDENTHAL:
            ok = sub.n == 10
    if not ok:
        raise ArgumentError(f"{sub.label} is not a {kind} subdiagram model of {f.label}")


def submodel_embed(
    f: HSSFamily, sub: HSSFamily, v_sub: Union[TangentVec, Payload], kind: str = "balanced"
) -> TangentVec:
    """Place a tangent vector of a subdiagram model into the leading (balanced) or trailing (characteristic) slot."""
    _check_sub(f, sub, kind)
    P = _payload(sub, v_sub)
    trailing = kind == "characteristic"
    if f.tag in (GRASSMANN, ORTH, LAG):
        rows = f.p if f.tag == GRASSMANN else f.n
        cols = f.q if f.tag == GRASSMANN else f.n
        return TangentVec(f, _pad(P, rows, cols, trailing))
    x = list(P)
    if f.tag == CAYLEY:
        u = Oct(x[0], x[1], (x[2], x[4], x[6]), (-x[3], -x[5], -x[7]))
        return TangentVec(f, (u, OZERO))
    o = Oct(x[2], -x[3], (x[4], x[6], x[8]), (x[5], x[7], x[9]))
    if trailing:
        return TangentVec(f, JordanElem((0, x[0], x[1]), OZERO, OZERO, o))
    return TangentVec(f, JordanElem((x[0], x[1], 0), o, OZERO, OZERO))


def subdiagram_pairs() -> List[Tuple[HSSFamily, HSSFamily, str]]:
    """Smallest-parameter (ambient, sub, kind) pairs of the balanced/characteristic tables."""
    from .family import Grassmann, LagGrassmann, OrthGrassmann, Quadric

    return [
        (Grassmann(3, 3), Grassmann(2, 2), "balanced"),
        (Grassmann(3, 2), Grassmann(2, 2), "balanced"),
        (Grassmann(3, 3), Grassmann(2, 2), "characteristic"),
        (Grassmann(4, 3), Grassmann(3, 2), "characteristic"),
        (OrthGrassmann(6), OrthGrassmann(4), "balanced"),
        (OrthGrassmann(5), OrthGrassmann(4), "balanced"),
        (OrthGrassmann(6), OrthGrassmann(4), "characteristic"),
        (LagGrassmann(3), LagGrassmann(2), "balanced"),
        (LagGrassmann(3), LagGrassmann(2), "characteristic"),
        (CayleyPlane(), Quadric(8), "balanced"),
        (Freudenthal(), Quadric(10), "balanced"),
        (Freudenthal(), Quadric(10), "characteristic"),
    ]


__all__ = [
    "ModelInfo",
    "TangentVec",
    "all_generators",
    "block_sizes",
    "from_coords",
    "from_key",
    "generator_labels",
    "generators",
    "model_info",
    "random_tangent",
    "random_tangent_of_rank",
    "secant_generators",
    "submodel_embed",
    "tangent_rank",
    "top_invariant",
]
