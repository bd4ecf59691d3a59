"""Root systems, noncompact roots, the strongly orthogonal chain and restricted roots.

Roots are stored as integer coefficient tuples in the simple-root basis;
inner products go through an orthogonal ambient realization so they stay
exact (integers or halves).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ArgumentError, InternalConsistencyError
from .family import CAYLEY, FREUDENTHAL, GRASSMANN, LAG, ORTH, QUADRIC, HSSFamily

Root = Tuple[int, ...]
Vec = Tuple[Q, ...]

HALF = Q(1, 2)


def _unit(dim: int, *pairs: Tuple[int, object]) -> Vec:
    v = [Q(0)] * dim
    for i, c in pairs:
        v[i] += Q(c)
    return tuple(v)


def _simple_roots(typ: str, rank: int) -> List[Vec]:
    """Ambient simple roots, Bourbaki numbering."""
    if typ in "ABCD":
        dim = rank + 1 if typ == "A" else rank
        out = [_unit(dim, (i, 1), (i + 1, -1)) for i in range(rank - 1)]
        if typ == "A":
            out.append(_unit(dim, (rank - 1, 1), (rank, -1)))
        elif typ == "B":
            out.append(_unit(dim, (rank - 1, 1)))
        elif typ == "C":
            out.append(_unit(dim, (rank - 1, 2)))
        else:
            out.append(_unit(dim, (rank - 2, 1), (rank - 1, 1)))
        return out
    if typ == "E" and rank in (6, 7):
        h = HALF
        a1 = (h, -h, -h, -h, -h, -h, -h, h)
        out = [a1, _unit(8, (0, 1), (1, 1))]
        out += [_unit(8, (i, 1), (i - 1, -1)) for i in range(1, rank - 1)]
        return out
    raise ArgumentError(f"unsupported root system {typ}{rank}")


POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63}[n],
}


def _ip(u: Vec, v: Vec) -> Q:
    return sum((a * b for a, b in zip(u, v)), Q(0))


@dataclass(frozen=True)
class RootDatum:
    """A simple root system realized in an orthogonal ambient space."""

    label: str
    rank: int
    simple: Tuple[Vec, ...]
    positive: Tuple[Root, ...]
    gram: Tuple[Tuple[Q, ...], ...]
    _pos_set: frozenset = field(repr=False, compare=False, default=frozenset())

    def ip(self, a: Root, b: Root) -> Q:
        g = self.gram
        return sum(
            (ai * bj * g[i][j] for i, ai in enumerate(a) if ai for j, bj in enumerate(b) if bj),
            Q(0),
        )

    def is_root(self, a: Root) -> bool:
        if a in self._pos_set:
            return True
        return tuple(-x for x in a) in self._pos_set

    def ambient(self, a: Root) -> Vec:
        dim = len(self.simple[0])
        return tuple(sum((c * s[k] for c, s in zip(a, self.simple)), Q(0)) for k in range(dim))

    @property
    def highest(self) -> Root:
        return max(self.positive, key=lambda a: (sum(a), a))


def build_root_datum(typ: str, rank: int, order: Optional[Sequence[int]] = None) -> RootDatum:
    """Enumerate positive roots by root strings.

    ``order`` optionally relabels the Bourbaki simple roots: new node i is
    Bourbaki node ``order[i]`` (1-based).
    """
    simple = _simple_roots(typ, rank)
    if order is not None:
        simple = [simple[i - 1] for i in order]
    gram = tuple(tuple(_ip(a, b) for b in simple) for a in simple)
    unit = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]

    def add(a: Root, b: Root) -> Root:
        return tuple(x + y for x, y in zip(a, b))

    def sub(a: Root, b: Root) -> Root:
        return tuple(x - y for x, y in zip(a, b))

    def pairing(a: Root, i: int) -> Q:
        # <a, alpha_i^vee>
        return 2 * sum((c * gram[j][i] for j, c in enumerate(a)), Q(0)) / gram[i][i]

    found = set(unit)
    layer = list(unit)
    while layer:
        nxt = []
        for a in layer:
            for i in range(rank):
                p = 0
                b = sub(a, unit[i])
                while b in found:
                    p += 1
                    b = sub(b, unit[i])
                q = p - pairing(a, i)
                if q > 0:
                    c = add(a, unit[i])
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        layer = nxt
    positive = tuple(sorted(found, key=lambda a: (sum(a), a)))
    expected = POSITIVE_COUNTS[typ](rank)
    if len(positive) != expected:
        raise InternalConsistencyError(
            f"{typ}{rank}: found {len(positive)} positive roots, expected {expected}"
        )
    return RootDatum(f"{typ}{rank}", rank, tuple(simple), positive, gram, frozenset(positive))


# Node labeling for E6 used by the OP^2 model: node i is Bourbaki node E6_ORDER[i].
# It is the labeling in which the branch node is last and the marked node is 1.
E6_ORDER = (1, 3, 4, 5, 6, 2)


@dataclass(frozen=True)
class RestrictedRoot:
    """Projection of a root onto span(Pi), in the Pi basis."""

    coeffs: Tuple[Q, ...]

    @property
    def support(self) -> Tuple[int, ...]:
        """1-based indices with a nonzero coefficient."""
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    def validate(self) -> None:
        """Raise unless the coefficients are 0, one slot in {+-1, +-1/2}, or two slots in {+-1/2}."""
        s = self.support
        c = self.coeffs
        if not s:
            return
        if len(s) == 1 and abs(c[s[0] - 1]) in (1, HALF):
            return
        if len(s) == 2 and all(abs(c[i - 1]) == HALF for i in s):
            return
        raise InternalConsistencyError(f"restriction {self} outside the classification")

    def positive_pair(self) -> Optional[Tuple[int, int]]:
        """``(l, j)`` with l <= j when this is (a_l + a_j)/2, else None."""
        s = self.support
        if len(s) == 1 and self.coeffs[s[0] - 1] == 1:
            return (s[0], s[0])
        if len(s) == 2 and all(self.coeffs[i - 1] == HALF for i in s):
            return (s[0], s[1])
        return None

    def positive_single(self) -> Optional[int]:
        """``l`` when this is a_l / 2, else None."""
        s = self.support
        if len(s) == 1 and self.coeffs[s[0] - 1] == HALF:
            return s[0]
        return None

    def is_half_single(self) -> bool:
        s = self.support
        return len(s) == 1 and abs(self.coeffs[s[0] - 1]) == HALF

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


class MarkedDatum:
    """A root datum with a cominuscule marked node and everything derived from it."""

    def __init__(self, datum: RootDatum, marked: int):
        if not 1 <= marked <= datum.rank:
            raise ArgumentError("marked node out of range")
        self.datum = datum
        self.marked = marked
        m = marked - 1
        coeffs = {a[m] for a in datum.positive}
        if not coeffs <= {0, 1}:
            raise InternalConsistencyError(f"node {marked} of {datum.label} is not cominuscule")
        self.noncompact: Tuple[Root, ...] = tuple(a for a in datum.positive if a[m] == 1)
        self.chain: Tuple[Root, ...] = strongly_orthogonal_chain(self)
        self.restrictions: Dict[Root, RestrictedRoot] = {
            b: restrict_root(self, b) for b in self.noncompact
        }

    @property
    def n(self) -> int:
        return len(self.noncompact)

    @property
    def r(self) -> int:
        return len(self.chain)

    def __repr__(self) -> str:
        return f"MarkedDatum({self.datum.label}, node {self.marked})"


def marked_type(family: HSSFamily) -> Tuple[str, int, int, Optional[Tuple[int, ...]]]:
    """(type, rank, marked node, optional relabeling) for a family."""
    t = family.tag
    if t == GRASSMANN:
        return "A", family.p + family.q - 1, family.p, None
    if t == ORTH:
        return "D", family.n, family.n, None
    if t == LAG:
        return "C", family.n, family.n, None
    if t == QUADRIC:
        n = family.n
        if n % 2:
            return "B", (n + 1) // 2, 1, None
        return "D", (n + 2) // 2, 1, None
    if t == CAYLEY:
        return "E", 6, 1, E6_ORDER
    if t == FREUDENTHAL:
        return "E", 7, 7, None
    raise ArgumentError(f"unknown family {t!r}")


@lru_cache(maxsize=None)
def _datum(typ: str, rank: int, order: Optional[Tuple[int, ...]]) -> RootDatum:
    return build_root_datum(typ, rank, order)


@lru_cache(maxsize=None)
def _marked(typ: str, rank: int, node: int, order: Optional[Tuple[int, ...]]) -> MarkedDatum:
    return MarkedDatum(_datum(typ, rank, order), node)


def build_marked_datum(family: HSSFamily) -> MarkedDatum:
    """Root system and cominuscule node realizing ``family``."""
    typ, rank, node, order = marked_type(family)
    return _marked(typ, rank, node, order)


def strongly_orthogonal(d: RootDatum, a: Root, b: Root) -> bool:
    if d.ip(a, b) != 0:
        return False
    s = tuple(x + y for x, y in zip(a, b))
    t = tuple(x - y for x, y in zip(a, b))
    return not d.is_root(s) and not d.is_root(t)


def strongly_orthogonal_chain(md: MarkedDatum) -> Tuple[Root, ...]:
    """Greedy chain: repeatedly take the highest noncompact root strongly orthogonal to the chain."""
    d = md.datum
    chain: List[Root] = []
    while True:
        cands = [
            b for b in md.noncompact if all(strongly_orthogonal(d, b, a) for a in chain)
        ]
        if not cands:
            return tuple(chain)
        cands.sort(key=lambda a: (sum(a), a), reverse=True)
        if len(cands) > 1 and sum(cands[1]) == sum(cands[0]):
            raise InternalConsistencyError(
                f"{d.label}: highest strongly orthogonal root is not unique at step {len(chain) + 1}"
            )
        chain.append(cands[0])


def restrict_root(md: MarkedDatum, beta: Root, chain: Optional[Sequence[Root]] = None) -> RestrictedRoot:
    """Orthogonal projection of ``beta`` onto span(chain), in the chain basis."""
    d = md.datum
    chain = md.chain if chain is None else chain
    rr = RestrictedRoot(tuple(d.ip(beta, a) / d.ip(a, a) for a in chain))
    rr.validate()
    return rr


@dataclass(frozen=True)
class TubeReport:
    is_tube: bool
    violations: Tuple[Root, ...]


def classify_tube(md: MarkedDatum) -> TubeReport:
    """Tube type iff no root restricts to +-a_i/2 alone."""
    bad = []
    for b in md.datum.positive:
        if restrict_root(md, b).is_half_single():
            bad.append(b)
    return TubeReport(not bad, tuple(bad))


def _check_k(md: MarkedDatum, k: int, lo: int = 1) -> None:
    if not lo <= k <= md.r:
        raise ArgumentError(f"k={k} outside [{lo}, {md.r}]")


def infinity_locus_roots(md: MarkedDatum, k: int) -> Tuple[Root, ...]:
    """Noncompact positive roots b with exactly one a_s (s <= k) such that a_s - b is a root."""
    _check_k(md, k)
    d = md.datum
    gamma = md.chain[:k]
    out = []
    for b in md.noncompact:
        hits = sum(1 for a in gamma if d.is_root(tuple(x - y for x, y in zip(a, b))))
        if hits == 1:
            out.append(b)
    return tuple(out)


def infinity_locus_dim(md: MarkedDatum, k: int) -> int:
    return len(infinity_locus_roots(md, k))


def balanced_roots(md: MarkedDatum, k: int) -> Tuple[Root, ...]:
    _check_k(md, k)
    out = []
    for b, rr in md.restrictions.items():
        pr = rr.positive_pair()
        if pr is not None and pr[1] <= k:
            out.append(b)
    return tuple(out)


def balanced_dim(md: MarkedDatum, k: int) -> int:
    return len(balanced_roots(md, k))


def char_roots(md: MarkedDatum, k: int) -> Tuple[Root, ...]:
    """Roots restricting to (a_l + a_j)/2 or a_l/2 with l, j > k.  Defined for 0 <= k <= r."""
    _check_k(md, k, lo=0)
    out = []
    for b, rr in md.restrictions.items():
        pr = rr.positive_pair()
        single = rr.positive_single()
        if (pr is not None and pr[0] > k) or (single is not None and single > k):
            out.append(b)
    return tuple(out)


def char_dim(md: MarkedDatum, k: int) -> int:
    return len(char_roots(md, k))


def transversal_sets(md: MarkedDatum, k: int) -> Tuple[set, set, set]:
    """The three root sets attached to s = r - k + 1: (above s), (within s), (straddling s)."""
    _check_k(md, k)
    s = md.r - k + 1
    A, B, C = set(), set(), set()
    for b, rr in md.restrictions.items():
        pr = rr.positive_pair()
        single = rr.positive_single()
        if pr is not None:
            lo, hi = pr
            if lo > s:
                A.add(b)
            if hi <= s:
                B.add(b)
            if lo <= s < hi:
                C.add(b)
        elif single is not None:
            if single > s:
                A.add(b)
            else:
                C.add(b)
    return A, B, C


def transversal_partition(md: MarkedDatum, k: int) -> bool:
    """Whether the noncompact roots split disjointly and exhaustively into the three sets.

    Also requires the straddling set to be exactly the root set of the
    infinity locus N_s, so that the three pieces are the normal, balanced
    and tangent directions at a point of N_s.
    """
    A, B, C = transversal_sets(md, k)
    s = md.r - k + 1
    everything = set(md.noncompact)
    disjoint = not (A & B or A & C or B & C)
    exhaustive = (A | B | C) == everything
    return (
        disjoint
        and exhaustive
        and C == set(infinity_locus_roots(md, s))
        and len(A) == char_dim(md, s)
        and len(B) == balanced_dim(md, s)
    )


@dataclass(frozen=True)
class BBRow:
    i: int
    dimN: int
    plus: int
    minus: int
    n: int

    @property
    def total(self) -> int:
        return self.dimN + self.plus + self.minus

    @property
    def ok(self) -> bool:
        return self.total == self.n

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "dimN": self.dimN,
            "plus": self.plus,
            "minus": self.minus,
            "sum": self.total,
            "pass": self.ok,
        }


def bb_dimension_table(md: MarkedDatum, strict: bool = True) -> List[BBRow]:
    """Rows (i, dim N_i, char_dim(i), balanced_dim(i)) for 1 <= i <= r.

    The two fibers over N_i are the characteristic directions beyond index
    i and the balanced directions up to index i; together with N_i they
    exhaust the tangent space.
    """
    rows = []
    for i in range(1, md.r + 1):
        row = BBRow(i, infinity_locus_dim(md, i), char_dim(md, i), balanced_dim(md, i), md.n)
        if strict and not row.ok:
            raise InternalConsistencyError(f"BB row {i} of {md!r}: {row.total} != {md.n}")
        rows.append(row)
    return rows


def root_str(a: Root) -> str:
    return "(" + "".join(str(x) for x in a) + ")"
