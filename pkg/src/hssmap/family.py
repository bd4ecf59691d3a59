"""Parameterized descriptors of the six irreducible compact Hermitian symmetric families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import ArgumentError

GRASSMANN = "grassmann"
ORTH = "orth"
LAG = "lag"
QUADRIC = "quadric"
CAYLEY = "cayley"
FREUDENTHAL = "freudenthal"

TAGS = (GRASSMANN, ORTH, LAG, QUADRIC, CAYLEY, FREUDENTHAL)
FORMS = ("split", "sum-squares")


@dataclass(frozen=True)
class HSSFamily:
    """A family tag with its integer parameters.

    ``p, q`` are used by Grassmann(p, q); ``n`` by the orthogonal and
    Lagrangian Grassmannians and by the quadric.  ``form`` picks the
    quadric's quadratic form and ``lag_minors`` the Lagrangian generator list.
    """

    tag: str
    p: int = 0
    q: int = 0
    n: int = 0
    form: str = "split"
    lag_minors: str = "basis"

    def __post_init__(self):
        t = self.tag
        if t not in TAGS:
            raise ArgumentError(f"unknown family {t!r}")
        if t == GRASSMANN and not (self.p >= self.q >= 2):
            raise ArgumentError("Grassmann(p, q) needs p >= q >= 2")
        if t == ORTH and self.n < 4:
            raise ArgumentError("OrthGrassmann(n) needs n >= 4")
        if t == LAG and self.n < 2:
            raise ArgumentError("LagGrassmann(n) needs n >= 2")
        if t == QUADRIC and self.n < 3:
            raise ArgumentError("Quadric(n) needs n >= 3")
        if self.form not in FORMS:
            raise ArgumentError(f"unknown quadratic form {self.form!r}")
        if self.lag_minors not in ("basis", "all", "principal"):
            raise ArgumentError(f"unknown Lagrangian generator list {self.lag_minors!r}")

    @property
    def params(self) -> Dict[str, object]:
        if self.tag == GRASSMANN:
            return {"p": self.p, "q": self.q}
        if self.tag in (ORTH, LAG):
            out: Dict[str, object] = {"n": self.n}
            if self.tag == LAG and self.lag_minors != "basis":
                out["lag_minors"] = self.lag_minors
            return out
        if self.tag == QUADRIC:
            return {"n": self.n, "form": self.form}
        return {}

    @property
    def label(self) -> str:
        if self.tag == GRASSMANN:
            return f"G({self.p},{self.q})"
        if self.tag == ORTH:
            return f"G^II({self.n})"
        if self.tag == LAG:
            return f"G^III({self.n})"
        if self.tag == QUADRIC:
            return f"Q^{self.n}" + ("" if self.form == "split" else "[sum-squares]")
        return "OP^2" if self.tag == CAYLEY else "E7/P7"

    @property
    def key(self) -> str:
        """Stable string key used in fixtures and reports."""
        if self.tag == GRASSMANN:
            return f"grassmann:{self.p},{self.q}"
        if self.tag in (ORTH, LAG, QUADRIC):
            return f"{self.tag}:{self.n}"
        return self.tag

    def __str__(self) -> str:
        return self.label


def Grassmann(p: int, q: int) -> HSSFamily:
    return HSSFamily(GRASSMANN, p=p, q=q)


def OrthGrassmann(n: int) -> HSSFamily:
    return HSSFamily(ORTH, n=n)


def LagGrassmann(n: int, lag_minors: str = "basis") -> HSSFamily:
    return HSSFamily(LAG, n=n, lag_minors=lag_minors)


def Quadric(n: int, form: str = "split") -> HSSFamily:
    return HSSFamily(QUADRIC, n=n, form=form)


def CayleyPlane() -> HSSFamily:
    return HSSFamily(CAYLEY)


def Freudenthal() -> HSSFamily:
    return HSSFamily(FREUDENTHAL)


def from_key(key: str) -> HSSFamily:
    tag, _, rest = key.partition(":")
    if tag == GRASSMANN:
        p, q = (int(x) for x in rest.split(","))
        return Grassmann(p, q)
    if tag in (ORTH, LAG, QUADRIC):
        return HSSFamily(tag, n=int(rest))
    return HSSFamily(tag)


# Supported parameter bounds (inclusive).
P_MAX = 6
ORTH_MAX = 8
LAG_MAX = 8
QUADRIC_MAX = 12


def sweep(
    tags: Optional[Tuple[str, ...]] = None,
    p_max: int = P_MAX,
    orth_max: int = ORTH_MAX,
    lag_max: int = 6,
    quadric_max: int = QUADRIC_MAX,
) -> Iterator[HSSFamily]:
    """The standard parameter sweep, in a fixed order."""
    tags = tags or TAGS
    if GRASSMANN in tags:
        for p in range(2, p_max + 1):
            for q in range(2, p + 1):
                yield Grassmann(p, q)
    if ORTH in tags:
        for n in range(4, orth_max + 1):
            yield OrthGrassmann(n)
    if LAG in tags:
        for n in range(2, lag_max + 1):
            yield LagGrassmann(n)
    if QUADRIC in tags:
        for n in range(3, quadric_max + 1):
            yield Quadric(n)
    if CAYLEY in tags:
        yield CayleyPlane()
    if FREUDENTHAL in tags:
        yield Freudenthal()


def sweep_list(**kw) -> List[HSSFamily]:
    return list(sweep(**kw))
