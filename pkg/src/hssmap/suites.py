"""Randomized and exhaustive verification suites, run per (suite, family) cell.

Every trial owns a Mersenne Twister stream seeded by the string
``"{seed}:{suite}:{family key}:{trial}"``, so a single trial can be
replayed without running the ones before it.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import tables
from .errors import ArgumentError, DomainError, InternalConsistencyError, SamplingError
from .exact_algebra import proj_point, rat_str
from .family import CAYLEY, FREUDENTHAL, GRASSMANN, QUADRIC, HSSFamily, Quadric, sweep
from .lm_map import (
    cstar_act_source,
    cstar_act_target,
    flow_limit,
    infinity_inverse,
    load_alignment,
    phi,
    phi_limit_at_infinity,
    plucker_agrees,
    plucker_raw,
    proportional,
    psi,
    source_point,
    tube_product,
    tube_unit_multiple,
)
from .models import (
    TangentVec,
    all_generators,
    from_coords,
    is_tube,
    random_rational,
    random_tangent,
    random_tangent_of_rank,
    rank,
    subdiagram_pairs,
    submodel_embed,
    tangent_rank,
    top_invariant,
)
from .octonions import JordanElem, Oct, jordan_adj, jordan_det, jordan_rank
from .roots import (
    balanced_dim,
    bb_dimension_table,
    build_marked_datum,
    char_dim,
    classify_tube,
    infinity_locus_dim,
    restrict_root,
    transversal_partition,
)
from .strat import N_FIXED, AFFINE, classify_stratum, in_M, in_V, sample_limits

SCHEMA_VERSION = 1


@dataclass
class Failure:
    trial: Optional[int]
    detail: str
    input: object = None
    replay: str = ""

    def to_json(self) -> dict:
        return {"trial": self.trial, "detail": self.detail, "input": self.input, "replay": self.replay}


@dataclass
class CellResult:
    suite: str
    family: str
    label: str
    params: dict
    trials: int
    failures: List[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def sort_key(self) -> Tuple[str, str]:
        return (self.suite, self.family)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "family": self.family,
            "label": self.label,
            "params": self.params,
            "trials": self.trials,
            "failures": [f.to_json() for f in self.failures],
            "pass": self.ok,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out


# A trial returns (input description, None) on success or (input, problem) on failure.
TrialFn = Callable[[HSSFamily, random.Random, dict], Tuple[object, Optional[str]]]
StaticFn = Callable[[HSSFamily, dict], List[str]]


@dataclass(frozen=True)
class Suite:
    name: str
    applies: Callable[[HSSFamily], bool]
    trial: Optional[TrialFn] = None
    static: Optional[StaticFn] = None
    description: str = ""


def _jv(v: TangentVec) -> object:
    return v.to_json()["payload"]


def _jp(x) -> List[str]:
    return [rat_str(c) for c in x.coords]


def _nonzero(rng: random.Random) -> Q:
    while True:
        x = random_rational(rng)
        if x:
            return x


def _parallel(a: Sequence, b: Sequence) -> bool:
    """Nonzero vectors of any length (including 1) on the same line."""
    if len(a) != len(b) or not any(a) or not any(b):
        return False
    i = next(j for j, x in enumerate(b) if x)
    return all(x * b[i] == y * a[i] for x, y in zip(a, b))


# --- static suites ----------------------------------------------------------------------------

def _fixture_entry(f: HSSFamily, ctx: dict) -> Optional[dict]:
    fx = ctx.get("fixture")
    if fx is None:
        fx = ctx["fixture"] = tables.load_fixture(ctx.get("fixtures"))
    return fx["families"].get(f.key)


def static_roots(f: HSSFamily, ctx: dict) -> List[str]:
    md = build_marked_datum(f)
    out = []
    tube = classify_tube(md)
    for b in md.datum.positive:
        try:
            restrict_root(md, b)
        except InternalConsistencyError as exc:
            out.append(str(exc))
    for b, rr in md.restrictions.items():
        if rr.positive_pair() is None and (tube.is_tube or rr.positive_single() is None):
            out.append(f"noncompact root {b} restricts to {rr}")
    entry = _fixture_entry(f, ctx)
    if entry is None:
        out.append(f"no fixture entry for {f.key}")
        return out
    if tube.is_tube != entry["tube"]:
        out.append(f"tube={tube.is_tube}, table says {entry['tube']}")
    if md.r != entry["r"] or md.n != entry["n"]:
        out.append(f"(n, r) = ({md.n}, {md.r}), table says ({entry['n']}, {entry['r']})")
    return out


def static_dimensions(f: HSSFamily, ctx: dict) -> List[str]:
    md = build_marked_datum(f)
    entry = _fixture_entry(f, ctx)
    out = []
    if entry is None:
        return [f"no fixture entry for {f.key}"]
    for k in range(1, md.r + 1):
        got = infinity_locus_dim(md, k)
        want = entry["infinity"][str(k)]
        if got != want:
            out.append(f"infinity locus dim N_{k}: roots give {got}, closed form {want}")
        got = balanced_dim(md, k)
        want = entry["balanced"][str(k)]
        if got != want:
            out.append(f"balanced k={k}: roots give {got}, closed form {want}")
        if not transversal_partition(md, k):
            out.append(f"transversal partition fails at k={k}")
    for k in range(0, md.r + 1):
        got = char_dim(md, k)
        want = entry["characteristic"][str(k)]
        if got != want:
            out.append(f"characteristic k={k}: roots give {got}, closed form {want}")
    for row in bb_dimension_table(md, strict=False):
        if not row.ok:
            out.append(f"bb row {row.i}: {row.dimN} + {row.plus} + {row.minus} != {row.n}")
    return out


def static_example(f: HSSFamily, ctx: dict) -> List[str]:
    """The quadric under the sum-of-squares form: phi, the center of psi, and the rank-2 limit."""
    g = Quadric(f.n, "sum-squares")
    n = g.n
    out = []
    x = [1, 1] + [0] * (n - 1)
    want = [1, 1] + [0] * (n - 1) + [1]
    got = phi(g, x)
    if list(got.coords) != want:
        out.append(f"phi({x}) = {list(got.coords)}, expected {want}")
    gen = [2, 0, 3] + [0] * (n - 2)
    if list(phi(g, gen).coords) != [1, 0, Q(3, 2)] + [0] * (n - 2) + [Q(9, 4)]:
        out.append("phi does not have the form [x0^2, x0 x_i, sum x_i^2]")
    try:
        psi(g, [0] * (n + 1) + [1])
        out.append("psi([0,...,0,1]) did not raise")
    except DomainError:
        pass
    v = from_coords(g, [1] + [0] * (n - 1))
    lim = phi_limit_at_infinity(g, v)
    if list(lim.coords) != [0] * (n + 1) + [1]:
        out.append(f"rank-2 limit is {list(lim.coords)}, expected [0,...,0,1]")
    if flow_limit(g, v) != lim:
        out.append("flow limit disagrees with the block extraction")
    st = classify_stratum(g, lim)
    if (st.kind, st.index) != (N_FIXED, 2):
        out.append(f"rank-2 limit classified as {st}")
    try:
        phi(g, [0] + [1] + [0] * (n - 1))
    except DomainError:
        out.append("phi([0, e1]) raised, but e1 is anisotropic and the point is in the domain")
    for bad in ([0] * (n + 1),):
        try:
            phi(g, bad)
            out.append("phi of the zero vector did not raise")
        except DomainError:
            pass
    return out


# --- trial suites ---------------------------------------------------------------------------------

def _cayley_oracle_rank(v: TangentVec) -> int:
    """Jordan rank of [[0,u,w],[u*,0,0],[w*,0,0]]: an independent rank oracle for the Cayley plane."""
    u, w = v.payload
    return jordan_rank(JordanElem((0, 0, 0), u, w, Oct()))


def trial_secant(f: HSSFamily, rng: random.Random, ctx: dict):
    r = rank(f)
    k0 = ctx["trial"] % (r + 1)
    v = random_tangent_of_rank(f, k0, rng)
    inp = {"rank": k0, "vec": _jv(v)}
    if tangent_rank(f, v) != k0:
        return inp, f"sampled rank {tangent_rank(f, v)} != {k0}"
    gens = all_generators(f, v)
    for k in range(1, r):
        vanish = not any(gens[k])
        if vanish != (k0 <= k):
            return inp, f"F_{k} vanishing={vanish} on a rank-{k0} vector"
    if is_tube(f) and (top_invariant(f, v) != 0) != (k0 == r):
        return inp, "degree-r invariant does not detect full rank"
    if f.tag == CAYLEY and _cayley_oracle_rank(v) != k0:
        return inp, "Jordan oracle rank disagrees"
    return inp, None


def trial_inverse(f: HSSFamily, rng: random.Random, ctx: dict):
    x0 = _nonzero(rng)
    if ctx["trial"] % 2:
        v = random_tangent(f, rng)
    else:
        v = random_tangent_of_rank(f, rng.randint(0, rank(f)), rng)
    x = source_point(x0, v)
    inp = {"point": _jp(x)}
    z = phi(f, x)
    if psi(f, z) != x:
        return inp, f"psi(phi(x)) = {psi(f, z)}"
    st = classify_stratum(f, z)
    if st.kind != AFFINE or st.v_index != tangent_rank(f, v) or not in_V(z, st.v_index):
        return inp, f"affine image classified as {st}"
    if any(in_M(z, k) for k in range(1, rank(f) + 1)):
        return inp, "affine image lies in some M_k"
    return inp, None


def trial_equivariance(f: HSSFamily, rng: random.Random, ctx: dict):
    t = _nonzero(rng)
    if ctx["trial"] % 4 == 3:
        x0, v = 0, random_tangent_of_rank(f, rank(f), rng)
    else:
        x0, v = random_rational(rng), random_tangent(f, rng)
    x = source_point(x0, v) if (x0 or not v.is_zero()) else source_point(1, v)
    inp = {"t": rat_str(t), "point": _jp(x)}
    try:
        lhs = phi(f, cstar_act_source(t, x))
        rhs = cstar_act_target(t, phi(f, x))
    except DomainError as exc:
        return inp, f"unexpected indeterminacy: {exc}"
    return inp, None if lhs == rhs else "phi(t.x) != t.phi(x)"


def trial_plucker(f: HSSFamily, rng: random.Random, ctx: dict):
    p, q = f.p, f.q
    if ctx["trial"] % 5 == 4:
        x0 = 0
        A = random_tangent_of_rank(f, q, rng).payload
    else:
        x0 = _nonzero(rng)
        A = random_tangent(f, rng).payload
    inp = {"x0": rat_str(x0), "A": A.to_json()}
    align = ctx.setdefault("align", {}).get((p, q))
    if align is None:
        align = ctx["align"][(p, q)] = load_alignment(p, q, ctx.get("fixtures"))
    if not plucker_agrees(p, q, x0, A, align):
        return inp, "phi differs from the Plucker oracle under the stored alignment"
    orc = plucker_raw(p, q, x0, A)
    permuted = [s * orc[i] for i, s in align]
    if proj_point(permuted) != phi(f, source_point(x0, TangentVec(f, A))):
        return inp, "normalized points differ"
    return inp, None


def trial_limit(f: HSSFamily, rng: random.Random, ctx: dict):
    r = rank(f)
    inp: Dict[str, object] = {}
    for k in range(1, r + 1):
        v = random_tangent_of_rank(f, k, rng)
        inp = {"rank": k, "vec": _jv(v)}
        z = phi_limit_at_infinity(f, v)
        if flow_limit(f, v) != z:
            return inp, "flow limit differs from the block extraction"
        blocks = z.block_values()
        if any(any(b) for j, b in enumerate(blocks) if j != k):
            return inp, "limit has support outside block k"
        if not _parallel(all_generators(f, v)[k - 1], blocks[k]):
            return inp, "block k is not F_(k-1)(v)"
        st = classify_stratum(f, z)
        if (st.kind, st.index) != (N_FIXED, k):
            return inp, f"limit classified as {st}"
        t = _nonzero(rng)
        if cstar_act_target(t, z) != z:
            return inp, "limit is not C*-fixed"
        if not in_M(z, r - k + 1) or (r - k >= 1 and in_M(z, r - k)):
            return inp, "limit violates the M_k linear-section description"
    return inp, None


def trial_inversion(f: HSSFamily, rng: random.Random, ctx: dict):
    r = rank(f)
    v = random_tangent_of_rank(f, r, rng)
    inp: Dict[str, object] = {"vec": _jv(v)}
    w = infinity_inverse(f, v)
    c = tube_unit_multiple(f, tube_product(f, v, w))
    if c is None or c == 0:
        return inp, "v * inverse(v) is not a nonzero multiple of the unit"
    if not proportional(infinity_inverse(f, w).coords(), v.coords()):
        return inp, "inverse is not an involution up to scale"
    if f.tag == FREUDENTHAL:
        m = random_tangent(f, rng).payload
        inp["generic"] = m.to_json()
        if jordan_adj(jordan_adj(m)) != m.scale(jordan_det(m)):
            return inp, "adj(adj(m)) != det(m) m"
        if c != jordan_det(v.payload):
            return inp, "v o adj(v) is not det(v) times the identity"
    return inp, None


def trial_subdiagram(pair, rng: random.Random, ctx: dict):
    f, sub, kind = pair
    rs = rank(sub)
    k0 = ctx["trial"] % (rs + 1)
    vs = random_tangent_of_rank(sub, k0, rng)
    inp = {"rank": k0, "vec": _jv(vs)}
    v = submodel_embed(f, sub, vs, kind)
    if tangent_rank(f, v) != k0:
        return inp, f"embedded rank {tangent_rank(f, v)} != {k0}"
    gf = all_generators(f, v)
    gs = all_generators(sub, vs)
    for k in range(1, rs):
        if (not any(gf[k])) != (not any(gs[k])):
            return inp, f"F_{k} membership differs after embedding"
    return inp, None


def _always(f: HSSFamily) -> bool:
    return True


SUITES: Dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("roots", _always, static=static_roots, description="restricted-root classification and tube column"),
        Suite("dimensions", _always, static=static_dimensions, description="closed-form locus dimensions, transversal partition, BB closure"),
        Suite("secant", _always, trial=trial_secant, description="F_k vanishes iff rank <= k"),
        Suite("inverse", _always, trial=trial_inverse, description="psi(phi(x)) = x on the affine cell"),
        Suite("equivariance", _always, trial=trial_equivariance, description="phi intertwines the C*-actions"),
        Suite("plucker", lambda f: f.tag == GRASSMANN, trial=trial_plucker, description="Grassmannian Plucker oracle"),
        Suite("limit", _always, trial=trial_limit, description="flow limits land in N_fixed(k), C*-fixed"),
        Suite("inversion", is_tube, trial=trial_inversion, description="inversion at infinity for tube families"),
        Suite("example", lambda f: f.tag == QUADRIC, static=static_example, description="quadric example values"),
        Suite("subdiagram", _always, trial=None, description="rank and secant membership commute with embeddings"),
        Suite("span", _always, static=None, description="sampled limits span each block"),
    ]
}

DEFAULT_SUITES = ("roots", "dimensions", "secant", "inverse", "equivariance", "plucker", "limit", "inversion", "example", "subdiagram")


@dataclass(frozen=True)
class SuiteConfig:
    suites: Tuple[str, ...]
    families: Tuple[HSSFamily, ...]
    trials: int = 100
    seed: int = 0
    fixtures: Optional[str] = None
    jobs: int = 1
    only_trial: Optional[int] = None
    span_max_block: int = 100
    argv_prefix: str = "hssmap"

    def __post_init__(self):
        if self.trials < 1:
            raise ArgumentError("trials must be >= 1")
        for s in self.suites:
            if s not in SUITES:
                raise ArgumentError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")

    def to_json(self) -> dict:
        return {
            "suites": list(self.suites),
            "families": [f.key for f in self.families],
            "trials": self.trials,
            "seed": self.seed,
        }


def _family_flags(f: HSSFamily) -> str:
    out = f"--family {f.tag}"
    if f.tag == GRASSMANN:
        out += f" --p {f.p} --q {f.q}"
    elif f.n:
        out += f" --n {f.n}"
    if f.tag == QUADRIC and f.form != "split":
        out += f" --form {f.form}"
    return out


def _replay(cfg: SuiteConfig, suite: str, f: HSSFamily, trial: Optional[int]) -> str:
    cmd = f"{cfg.argv_prefix} run --suite {suite} {_family_flags(f)} --seed {cfg.seed}"
    if trial is not None:
        cmd += f" --trial {trial}"
    return cmd


@dataclass(frozen=True)
class Cell:
    suite: str
    family: HSSFamily
    sub: Optional[Tuple[HSSFamily, HSSFamily, str]] = None

    @property
    def key(self) -> str:
        if self.sub is not None:
            f, s, kind = self.sub
            return f"{f.key}<{s.key}:{kind}"
        return self.family.key


def plan(cfg: SuiteConfig) -> List[Cell]:
    cells: List[Cell] = []
    keys = {f.key for f in cfg.families}
    for s in cfg.suites:
        if s == "subdiagram":
            for pair in subdiagram_pairs():
                if pair[0].key in keys:
                    cells.append(Cell(s, pair[0], pair))
            continue
        for f in cfg.families:
            if SUITES[s].applies(f):
                cells.append(Cell(s, f))
    return cells


def _trial_rng(cfg: SuiteConfig, suite: str, key: str, trial: int) -> random.Random:
    return random.Random(f"{cfg.seed}:{suite}:{key}:{trial}")


def run_cell(cfg: SuiteConfig, cell: Cell) -> CellResult:
    start = time.perf_counter()
    f = cell.family
    label = f.label if cell.sub is None else f"{cell.sub[1].label} in {f.label} ({cell.sub[2]})"
    res = CellResult(cell.suite, cell.key, label, f.params, 0)
    suite = SUITES[cell.suite]
    ctx: dict = {"fixtures": cfg.fixtures}
    if cell.suite == "span":
        res.trials = 1
        from .models import block_sizes

        for k in range(1, rank(f) + 1):
            size = block_sizes(f)[k]
            if size > cfg.span_max_block:
                continue
            chk = sample_limits(f, k, size + 5, _trial_rng(cfg, "span", f.key, k), span=True)
            if not chk.ok:
                res.failures.append(Failure(None, f"block {k}: span rank {chk.span_rank} of {size}", None, _replay(cfg, "span", f, None)))
    elif suite.static is not None:
        res.trials = 1
        try:
            problems = suite.static(f, ctx)
        except Exception as exc:  # a crash is a failure of the cell, recorded with its type
            problems = [f"{type(exc).__name__}: {exc}"]
        res.failures.extend(Failure(None, p, None, _replay(cfg, cell.suite, f, None)) for p in problems)
    else:
        trials = range(cfg.trials) if cfg.only_trial is None else [cfg.only_trial]
        for t in trials:
            ctx["trial"] = t
            rng = _trial_rng(cfg, cell.suite, cell.key, t)
            try:
                if cell.sub is not None:
                    inp, problem = trial_subdiagram(cell.sub, rng, ctx)
                else:
                    inp, problem = suite.trial(f, rng, ctx)
            except (InternalConsistencyError, SamplingError, DomainError, ArgumentError) as exc:
                inp, problem = None, f"{type(exc).__name__}: {exc}"
            res.trials += 1
            if problem is not None:
                res.failures.append(Failure(t, problem, inp, _replay(cfg, cell.suite, f, t)))
    res.elapsed = time.perf_counter() - start
    return res


def _run_cell_args(args):
    return run_cell(*args)


def run_suite(cfg: SuiteConfig) -> "Report":
    cells = plan(cfg)
    if cfg.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(_run_cell_args, [(cfg, c) for c in cells]))
    else:
        results = [run_cell(cfg, c) for c in cells]
    results.sort(key=CellResult.sort_key)
    return Report(cfg, results)


@dataclass
class Report:
    config: SuiteConfig
    cells: List[CellResult]

    @property
    def failures(self) -> int:
        return sum(len(c.failures) for c in self.cells)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self, timing: bool = True) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_json(),
            "cells": [c.to_json(timing) for c in self.cells],
            "summary": {"cells": len(self.cells), "failures": self.failures, "pass": self.ok},
        }

    def to_text(self) -> str:
        lines = []
        for c in self.cells:
            status = "PASS" if c.ok else "FAIL"
            lines.append(f"{status} {c.suite:<12} {c.label:<28} trials={c.trials} failures={len(c.failures)}")
            for fl in c.failures[:5]:
                lines.append(f"    trial {fl.trial}: {fl.detail}")
                lines.append(f"    replay: {fl.replay}")
        lines.append(f"{len(self.cells)} cells, {self.failures} failures")
        return "\n".join(lines)


def default_families() -> Tuple[HSSFamily, ...]:
    return tuple(sweep())
