"""Block-support stratification of points of X in P^N and the Bialynicki-Birula report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional

from .errors import ArgumentError, InternalConsistencyError
from .exact_algebra import ProjPoint, RatMatrix, mat_rank, proj_point
from .family import HSSFamily
from .lm_map import cstar_act_target, flow_limit, phi_limit_at_infinity
from .models import block_sizes, make_rng, random_tangent_of_rank, rank
from .roots import bb_dimension_table, build_marked_datum

AFFINE = "affine_cell"
M_DIFF = "M_diff"
V_DIFF = "V_diff"
N_FIXED = "N_fixed"


def _attach(f: Optional[HSSFamily], z) -> ProjPoint:
    if isinstance(z, ProjPoint) and z.blocks is not None:
        return z
    if f is None:
        raise ArgumentError("point carries no block structure")
    coords = z.coords if isinstance(z, ProjPoint) else z
    return proj_point(coords, block_sizes(f))


def block_support(z: ProjPoint) -> FrozenSet[int]:
    if not isinstance(z, ProjPoint) or z.blocks is None:
        raise ArgumentError("block_support needs a point with block structure")
    return frozenset(j for j, b in enumerate(z.block_values()) if any(b))


def _r(z: ProjPoint) -> int:
    if z.blocks is None:
        raise ArgumentError("point carries no block structure")
    return len(z.blocks) - 1


def in_M(z: ProjPoint, k: int) -> bool:
    """z lies in span(P_r, ..., P_(r-k+1)): blocks 0..r-k vanish."""
    r = _r(z)
    if not 1 <= k <= r:
        raise ArgumentError(f"M_k is defined for 1 <= k <= {r}")
    return not any(j <= r - k for j in block_support(z))


def in_V(z: ProjPoint, k: int) -> bool:
    """z lies in span(P_0, ..., P_k): blocks k+1..r vanish."""
    r = _r(z)
    if not 0 <= k <= r:
        raise ArgumentError(f"V_k is defined for 0 <= k <= {r}")
    return not any(j > k for j in block_support(z))


@dataclass(frozen=True)
class Stratum:
    """Stratum of a point: ``kind`` with ``index``; ``m_index``/``v_index`` are the smallest k with z in M_k / V_k."""

    kind: str
    index: int
    m_index: Optional[int]
    v_index: int

    def to_json(self) -> Dict[str, object]:
        return {"kind": self.kind, "index": self.index, "m_index": self.m_index, "v_index": self.v_index}

    def __str__(self) -> str:
        return f"{self.kind}({self.index})"


def classify_stratum(f: Optional[HSSFamily], z) -> Stratum:
    """Classify a point certified to lie on X by its nonzero blocks."""
    z = _attach(f, z)
    S = block_support(z)
    r = _r(z)
    lo, hi = min(S), max(S)
    if 0 in S:
        if S != frozenset(range(hi + 1)):
            raise InternalConsistencyError(f"affine point with non-contiguous block support {sorted(S)}")
        return Stratum(AFFINE, hi, None, hi)
    m_index = r - lo + 1
    if len(S) == 1:
        return Stratum(N_FIXED, lo, m_index, hi)
    return Stratum(M_DIFF, m_index, m_index, hi)


@dataclass
class SampleCheck:
    k: int
    count: int
    n_fixed: int = 0
    cstar_fixed: int = 0
    flow_agrees: int = 0
    covered: int = 0
    block_size: int = 0
    span_rank: Optional[int] = None

    @property
    def ok(self) -> bool:
        span_ok = self.span_rank is None or self.span_rank == self.block_size
        return self.n_fixed == self.cstar_fixed == self.flow_agrees == self.count and span_ok

    def to_json(self) -> Dict[str, object]:
        out = {
            "k": self.k,
            "count": self.count,
            "n_fixed": self.n_fixed,
            "cstar_fixed": self.cstar_fixed,
            "flow_agrees": self.flow_agrees,
            "coordinates_covered": self.covered,
            "block_size": self.block_size,
            "pass": self.ok,
        }
        if self.span_rank is not None:
            out["span_rank"] = self.span_rank
        return out


def sample_limits(f: HSSFamily, k: int, count: int, seed, span: bool = False) -> SampleCheck:
    """Flow random rank-k tangents to infinity and check where they land."""
    rng = make_rng(seed)
    size = block_sizes(f)[k]
    chk = SampleCheck(k, count, block_size=size)
    seen = [False] * size
    rows: List[tuple] = []
    for _ in range(count):
        v = random_tangent_of_rank(f, k, rng)
        z = phi_limit_at_infinity(f, v)
        st = classify_stratum(f, z)
        chk.n_fixed += st.kind == N_FIXED and st.index == k
        t = rng.choice((2, 3, -1, 5))
        chk.cstar_fixed += cstar_act_target(t, z) == z
        chk.flow_agrees += flow_limit(f, v) == z
        blk = z.block(k)
        rows.append(blk)
        for i, x in enumerate(blk):
            seen[i] = seen[i] or x != 0
    chk.covered = sum(seen)
    if span:
        chk.span_rank = mat_rank(RatMatrix(rows)) if rows else 0
    return chk


@dataclass
class BBReport:
    family: HSSFamily
    n: int
    rows: list
    samples: List[SampleCheck]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and all(s.ok for s in self.samples)

    def to_json(self) -> Dict[str, object]:
        return {
            "family": self.family.tag,
            "params": self.family.params,
            "label": self.family.label,
            "n": self.n,
            "rows": [r.to_json() for r in self.rows],
            "samples": [s.to_json() for s in self.samples],
            "pass": self.ok,
        }


def bb_full_report(f: HSSFamily, samples: int = 5, seed=0, span: bool = False) -> BBReport:
    """Root-count BB table merged with sampled limit classifications for every rank."""
    md = build_marked_datum(f)
    rows = bb_dimension_table(md, strict=False)
    rng = make_rng(f"{seed}:bb:{f.key}")
    checks = [sample_limits(f, k, samples, rng, span) for k in range(1, rank(f) + 1)]
    return BBReport(f, md.n, rows, checks)
