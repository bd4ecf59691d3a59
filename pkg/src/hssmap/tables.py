"""Closed-form dimension tables, independent of the root enumeration.

These formulas come from the explicit descriptions of the infinity loci
and of the balanced and characteristic subspaces of each family.  The
shipped fixture ``data/tables.json`` is generated from them and compared
against the root counts at test time.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Dict, List

from .errors import ArgumentError
from .family import CAYLEY, FREUDENTHAL, GRASSMANN, LAG, ORTH, QUADRIC, HSSFamily, sweep

FIXTURE = "tables.json"


def dim_n(f: HSSFamily) -> int:
    t = f.tag
    if t == GRASSMANN:
        return f.p * f.q
    if t == ORTH:
        return f.n * (f.n - 1) // 2
    if t == LAG:
        return f.n * (f.n + 1) // 2
    if t == QUADRIC:
        return f.n
    return 16 if t == CAYLEY else 27


def rank(f: HSSFamily) -> int:
    t = f.tag
    if t == GRASSMANN:
        return f.q
    if t == ORTH:
        return f.n // 2
    if t == LAG:
        return f.n
    return 3 if t == FREUDENTHAL else 2


def tube(f: HSSFamily) -> bool:
    t = f.tag
    if t == GRASSMANN:
        return f.p == f.q
    if t == ORTH:
        return f.n % 2 == 0
    return t != CAYLEY


def infinity_dim(f: HSSFamily, k: int) -> int:
    """dim N_k for 1 <= k <= r."""
    _range(f, k, 1)
    t = f.tag
    if t == GRASSMANN:
        return k * (f.p - k) + k * (f.q - k)
    if t == ORTH:
        return 2 * k * (f.n - 2 * k)
    if t == LAG:
        return k * (f.n - k)
    if t == QUADRIC:
        return f.n - 2 if k == 1 else 0
    if t == CAYLEY:
        return (10, 8)[k - 1]
    return (16, 16, 0)[k - 1]


def balanced(f: HSSFamily, k: int) -> int:
    """Dimension of the rank-k balanced subspace, 1 <= k <= r."""
    _range(f, k, 1)
    t = f.tag
    if t == GRASSMANN:
        return k * k
    if t == ORTH:
        return k * (2 * k - 1)
    if t == LAG:
        return k * (k + 1) // 2
    if t == QUADRIC:
        return 1 if k == 1 else f.n
    if t == CAYLEY:
        return (1, 8)[k - 1]
    return (1, 10, 27)[k - 1]


def characteristic(f: HSSFamily, k: int) -> int:
    """Dimension of the characteristic subspace attached to the last r - k chain roots, 0 <= k <= r."""
    _range(f, k, 0)
    t = f.tag
    if t == GRASSMANN:
        return (f.q - k) * (f.p - k)
    if t == ORTH:
        m = f.n - 2 * k
        return m * (m - 1) // 2
    if t == LAG:
        m = f.n - k
        return m * (m + 1) // 2
    if t == QUADRIC:
        return (f.n, 1, 0)[k]
    if t == CAYLEY:
        return (16, 5, 0)[k]
    return (27, 10, 1, 0)[k]


def _range(f: HSSFamily, k: int, lo: int) -> None:
    if not lo <= k <= rank(f):
        raise ArgumentError(f"k={k} outside [{lo}, {rank(f)}] for {f.label}")


def closed_form_entry(f: HSSFamily) -> Dict[str, object]:
    r = rank(f)
    return {
        "label": f.label,
        "n": dim_n(f),
        "r": r,
        "tube": tube(f),
        "infinity": {str(k): infinity_dim(f, k) for k in range(1, r + 1)},
        "balanced": {str(k): balanced(f, k) for k in range(1, r + 1)},
        "characteristic": {str(k): characteristic(f, k) for k in range(0, r + 1)},
    }


def build_fixture() -> Dict[str, object]:
    return {
        "schema_version": 1,
        "families": {f.key: closed_form_entry(f) for f in sweep()},
    }


def load_fixture(directory: str | None = None) -> Dict[str, object]:
    if directory is not None:
        with open(f"{directory}/{FIXTURE}") as fh:
            return json.load(fh)
    return json.loads(resources.files("hssmap").joinpath("data", FIXTURE).read_text())


def write_fixture(path: str, data: Dict[str, object] | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(build_fixture() if data is None else data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def fixture_keys() -> List[str]:
    return sorted(load_fixture()["families"])
