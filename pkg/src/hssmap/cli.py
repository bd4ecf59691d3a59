"""``hssmap`` command line: single-input commands and the verification suite runner.

Exit status: 0 on success, 1 when a check fails or an input lies outside the
domain of the requested map, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from functools import lru_cache
from importlib import resources
from typing import List, Optional, Sequence

from . import tables
from .errors import ArgumentError, DomainError, InternalConsistencyError, SamplingError
from .exact_algebra import rat
from .family import (
    CAYLEY,
    FORMS,
    FREUDENTHAL,
    GRASSMANN,
    LAG,
    LAG_MAX,
    ORTH,
    ORTH_MAX,
    P_MAX,
    QUADRIC,
    QUADRIC_MAX,
    TAGS,
    HSSFamily,
    sweep,
)
from .lm_map import ALIGNMENT_FIXTURE, build_alignment_fixture, phi, phi_limit_at_infinity, psi, write_alignment_fixture
from .models import TangentVec, all_generators, model_info, rank, tangent_rank
from .strat import classify_stratum
from .suites import DEFAULT_SUITES, SUITES, SuiteConfig, run_suite


class UsageError(Exception):
    pass


def _family_args(p: argparse.ArgumentParser, allow_all: bool = False) -> None:
    choices = list(TAGS) + (["all"] if allow_all else [])
    p.add_argument("--family", required=not allow_all, default="all" if allow_all else None, choices=choices)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--form", choices=FORMS, default="split")
    p.add_argument("--lag-minors", choices=("basis", "all", "principal"), default="basis")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--fixtures", metavar="DIR", help="directory holding tables.json and plucker_alignment.json")


def _check_bounds(f: HSSFamily) -> HSSFamily:
    if f.tag == GRASSMANN and f.p > P_MAX:
        raise UsageError(f"Grassmann parameters are supported up to {P_MAX}")
    if f.tag in (ORTH, LAG) and f.n > (ORTH_MAX if f.tag == ORTH else LAG_MAX):
        raise UsageError(f"{f.tag} is supported up to n = {ORTH_MAX if f.tag == ORTH else LAG_MAX}")
    if f.tag == QUADRIC and f.n > QUADRIC_MAX:
        raise UsageError(f"quadrics are supported up to n = {QUADRIC_MAX}")
    return f


def family_from_args(a: argparse.Namespace) -> HSSFamily:
    t = a.family
    try:
        if t == GRASSMANN:
            if a.p is None or a.q is None:
                raise UsageError("--family grassmann needs --p and --q")
            return _check_bounds(HSSFamily(t, p=a.p, q=a.q))
        if t in (ORTH, LAG, QUADRIC):
            if a.n is None:
                raise UsageError(f"--family {t} needs --n")
            return _check_bounds(HSSFamily(t, n=a.n, form=a.form, lag_minors=a.lag_minors))
        return HSSFamily(t)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None


def families_for_run(a: argparse.Namespace) -> List[HSSFamily]:
    """One family when its parameters are given, otherwise the sweep restricted to the tag."""
    explicit = a.p is not None or a.q is not None or a.n is not None
    if a.family != "all" and (explicit or a.family in (CAYLEY, FREUDENTHAL)):
        return [family_from_args(a)]
    tags = TAGS if a.family == "all" else (a.family,)
    kw = {}
    if a.max_p is not None:
        kw["p_max"] = min(a.max_p, P_MAX)
    if a.max_n is not None:
        kw.update(orth_max=min(a.max_n, ORTH_MAX), lag_max=min(a.max_n, LAG_MAX), quadric_max=min(a.max_n, QUADRIC_MAX))
    out = list(sweep(tags, **kw))
    if a.form != "split" or a.lag_minors != "basis":
        out = [HSSFamily(f.tag, f.p, f.q, f.n, a.form if f.tag == QUADRIC else "split", a.lag_minors if f.tag == LAG else "basis") for f in out]
    return out


def _parse_json(text: str, what: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _parse_point(text: str) -> list:
    data = _parse_json(text, "--point")
    if isinstance(data, dict):
        data = data.get("point")
    if not isinstance(data, list):
        raise UsageError("--point must be a JSON list of integers or \"p/q\" strings")
    try:
        return [rat(x) for x in data]
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None


def _parse_vec(f: HSSFamily, text: str) -> TangentVec:
    data = _parse_json(text, "tangent vector")
    try:
        return TangentVec.from_json(data, f)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None


def _emit(a: argparse.Namespace, payload: dict, text: str) -> None:
    if a.format == "text":
        print(text)
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


# --- commands ----------------------------------------------------------------------------

def cmd_info(a) -> int:
    fams = families_for_run(a) if a.family == "all" else [family_from_args(a)]
    rows = []
    for f in fams:
        d = model_info(f).to_json()
        d.update(family=f.tag, params=f.params, label=f.label)
        rows.append(d)
    payload = rows[0] if len(rows) == 1 else {"families": rows}
    text = "\n".join(f"{d['label']}: n={d['n']} r={d['r']} N={d['N']} blocks={d['blocks']} tube={d['tube']}" for d in rows)
    _emit(a, payload, text)
    return 0


def cmd_phi(a) -> int:
    f = family_from_args(a)
    z = phi(f, _parse_point(a.point))
    out = z.to_json()
    out["stratum"] = classify_stratum(f, z).to_json()
    _emit(a, out, repr(z))
    return 0


def cmd_psi(a) -> int:
    f = family_from_args(a)
    x = psi(f, _parse_point(a.point))
    _emit(a, x.to_json(), repr(x))
    return 0


def cmd_limit(a) -> int:
    f = family_from_args(a)
    v = _parse_vec(f, a.vec)
    z = phi_limit_at_infinity(f, v)
    out = z.to_json()
    out["rank"] = tangent_rank(f, v)
    out["stratum"] = classify_stratum(f, z).to_json()
    _emit(a, out, repr(z))
    return 0


def cmd_rank(a) -> int:
    f = family_from_args(a)
    v = _parse_vec(f, a.vec)
    k = tangent_rank(f, v)
    gens = all_generators(f, v)
    vanish = {str(j): not any(gens[j]) for j in range(1, rank(f))}
    _emit(a, {"rank": k, "secant_vanishing": vanish}, str(k))
    return 0


def cmd_classify(a) -> int:
    f = family_from_args(a)
    st = classify_stratum(f, _parse_point(a.point))
    _emit(a, st.to_json(), str(st))
    return 0


def cmd_run(a) -> int:
    suites = []
    for s in a.suite or []:
        suites.extend(x for x in s.split(",") if x)
    suites = tuple(suites) or DEFAULT_SUITES
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    if a.trials < 1:
        raise UsageError("--trials must be >= 1")
    cfg = SuiteConfig(
        suites=suites,
        families=tuple(families_for_run(a)),
        trials=a.trials,
        seed=a.seed,
        fixtures=a.fixtures,
        jobs=a.jobs,
        only_trial=a.trial,
    )
    report = run_suite(cfg)
    _emit(a, report.to_json(timing=not a.no_timing), report.to_text())
    return 0 if report.ok else 1


@lru_cache(maxsize=1)
def _rebuilt() -> dict:
    return {tables.FIXTURE: tables.build_fixture(), ALIGNMENT_FIXTURE: build_alignment_fixture()}


def cmd_fixtures(a) -> int:
    """Write the fixtures into --fixtures DIR, or with --check compare the stored ones to a rebuild."""
    built = _rebuilt()
    if a.check:
        bad = []
        for name, data in built.items():
            if a.fixtures is None:
                stored = json.loads(resources.files("hssmap").joinpath("data", name).read_text())
            else:
                with open(os.path.join(a.fixtures, name)) as fh:
                    stored = json.load(fh)
            if stored != data:
                bad.append(name)
        _emit(a, {"mismatched": bad, "pass": not bad}, "ok" if not bad else "mismatched: " + ", ".join(bad))
        return 1 if bad else 0
    if a.fixtures is None:
        raise UsageError("fixtures needs --fixtures DIR (or --check)")
    os.makedirs(a.fixtures, exist_ok=True)
    tables.write_fixture(os.path.join(a.fixtures, tables.FIXTURE), built[tables.FIXTURE])
    write_alignment_fixture(os.path.join(a.fixtures, ALIGNMENT_FIXTURE), built[ALIGNMENT_FIXTURE])
    _emit(a, {"written": sorted(built)}, "wrote " + ", ".join(sorted(built)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hssmap", description="Exact verification of graded birational maps on Hermitian symmetric spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="dimension, rank, ambient space and block sizes")
    _family_args(p, allow_all=True)
    p.add_argument("--max-p", type=int)
    p.add_argument("--max-n", type=int)
    p.set_defaults(func=cmd_info)

    for name, fn, hlp in (
        ("phi", cmd_phi, "apply phi to a source point"),
        ("psi", cmd_psi, "apply the inverse projection to a target point"),
        ("classify", cmd_classify, "stratum of a target point"),
    ):
        p = sub.add_parser(name, help=hlp)
        _family_args(p)
        p.add_argument("--point", required=True, help='JSON list, e.g. "[1,1,0,0]" or "[\\"1/2\\",3]"; @file reads a file')
        p.set_defaults(func=fn)

    for name, fn, hlp in (("limit", cmd_limit, "limit of phi([s, v]) as s -> 0"), ("rank", cmd_rank, "rank and secant membership")):
        p = sub.add_parser(name, help=hlp)
        _family_args(p)
        p.add_argument("--vec", "--elem", dest="vec", required=True, help="tangent vector JSON (payload or full record); @file reads a file")
        p.set_defaults(func=fn)

    p = sub.add_parser("run", help="run verification suites")
    _family_args(p, allow_all=True)
    p.add_argument("--suite", action="append", help=f"suite name(s), repeatable or comma separated: {', '.join(SUITES)}")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, help="replay a single trial index")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-p", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--no-timing", action="store_true", help="omit elapsed fields")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fixtures", help="regenerate or check the stored tables")
    p.add_argument("--fixtures", metavar="DIR")
    p.add_argument("--check", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except UsageError as exc:
        print(f"hssmap: usage error: {exc}", file=sys.stderr)
        return 2
    except ArgumentError as exc:
        print(f"hssmap: usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"hssmap: {exc}", file=sys.stderr)
        return 1
    except (InternalConsistencyError, SamplingError) as exc:
        print(f"hssmap: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
