"""Split octonions in Zorn vector-matrix form and the Jordan algebra J3(O).

An octonion is a 2x2 "matrix" [[a, u], [v, b]] with scalars a, b and
3-vectors u, v.  The product below is fixed once; the multiplicativity of
the norm N = ab - u.v is the first property tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import ArgumentError, InternalConsistencyError
from .exact_algebra import Scalar, rat, rat_str

Vec3 = Tuple[Scalar, Scalar, Scalar]


def _dot(u: Vec3, v: Vec3) -> Scalar:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _lin(s: Scalar, u: Vec3, t: Scalar, v: Vec3) -> Vec3:
    return (s * u[0] + t * v[0], s * u[1] + t * v[1], s * u[2] + t * v[2])


@dataclass(frozen=True)
class Oct:
    a: Scalar = 0
    b: Scalar = 0
    u: Vec3 = (0, 0, 0)
    v: Vec3 = (0, 0, 0)

    @classmethod
    def scalar(cls, c: Scalar) -> "Oct":
        return cls(c, c)

    @classmethod
    def from_coords(cls, xs: Sequence) -> "Oct":
        """Inverse of :meth:`coords`: (a, u1, u2, u3, v1, v2, v3, b)."""
        if len(xs) != 8:
            raise ArgumentError("an octonion has 8 coordinates")
        xs = [rat(x) for x in xs]
        return cls(xs[0], xs[7], tuple(xs[1:4]), tuple(xs[4:7]))

    def coords(self) -> Tuple[Scalar, ...]:
        return (self.a, *self.u, *self.v, self.b)

    def __add__(self, o: "Oct") -> "Oct":
        return Oct(self.a + o.a, self.b + o.b, _lin(1, self.u, 1, o.u), _lin(1, self.v, 1, o.v))

    def __sub__(self, o: "Oct") -> "Oct":
        return Oct(self.a - o.a, self.b - o.b, _lin(1, self.u, -1, o.u), _lin(1, self.v, -1, o.v))

    def __neg__(self) -> "Oct":
        return Oct(-self.a, -self.b, _lin(-1, self.u, 0, self.u), _lin(-1, self.v, 0, self.v))

    def scale(self, c: Scalar) -> "Oct":
        return Oct(c * self.a, c * self.b, _lin(c, self.u, 0, self.u), _lin(c, self.v, 0, self.v))

    def __mul__(self, o: "Oct") -> "Oct":
        return oct_mul(self, o)

    def is_zero(self) -> bool:
        return not any(self.coords())

    def to_json(self) -> dict:
        return {
            "a": rat_str(self.a),
            "b": rat_str(self.b),
            "u": [rat_str(x) for x in self.u],
            "v": [rat_str(x) for x in self.v],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Oct":
        try:
            u = tuple(rat(x) for x in d["u"])
            v = tuple(rat(x) for x in d["v"])
            if len(u) != 3 or len(v) != 3:
                raise ArgumentError("octonion vectors must have 3 components")
            return cls(rat(d["a"]), rat(d["b"]), u, v)
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed octonion JSON: {exc}") from None


ONE = Oct(1, 1)
ZERO = Oct()


def oct_mul(x: Oct, y: Oct) -> Oct:
    """Zorn product [[a,u],[v,b]] * [[a',u'],[v',b']]."""
    cu = _cross(x.v, y.v)
    cv = _cross(x.u, y.u)
    return Oct(
        x.a * y.a + _dot(x.u, y.v),
        x.b * y.b + _dot(x.v, y.u),
        tuple(x.a * y.u[i] + y.b * x.u[i] - cu[i] for i in range(3)),
        tuple(y.a * x.v[i] + x.b * y.v[i] + cv[i] for i in range(3)),
    )


def oct_conj(x: Oct) -> Oct:
    return Oct(x.b, x.a, _lin(-1, x.u, 0, x.u), _lin(-1, x.v, 0, x.v))


def oct_norm(x: Oct) -> Scalar:
    return x.a * x.b - _dot(x.u, x.v)


def oct_trace(x: Oct) -> Scalar:
    return x.a + x.b


def oct_pair(x: Oct, y: Oct) -> Scalar:
    """Polarized norm: N(x + y) - N(x) - N(y)."""
    return x.a * y.b + x.b * y.a - _dot(x.u, y.v) - _dot(x.v, y.u)


# --- J3(O) ------------------------------------------------------------------

@dataclass(frozen=True)
class JordanElem:
    """Hermitian 3x3 octonion matrix [[c1, x, y], [x*, c2, z], [y*, z*, c3]]."""

    c: Tuple[Scalar, Scalar, Scalar] = (0, 0, 0)
    x: Oct = ZERO
    y: Oct = ZERO
    z: Oct = ZERO

    @classmethod
    def diag(cls, c1: Scalar, c2: Scalar, c3: Scalar) -> "JordanElem":
        return cls((rat(c1), rat(c2), rat(c3)))

    @classmethod
    def identity(cls) -> "JordanElem":
        return cls.diag(1, 1, 1)

    def coords(self) -> Tuple[Scalar, ...]:
        """27 coordinates: c1, c2, c3, then x, y, z in octonion coordinate order."""
        return (*self.c, *self.x.coords(), *self.y.coords(), *self.z.coords())

    @classmethod
    def from_coords(cls, xs: Sequence) -> "JordanElem":
        if len(xs) != 27:
            raise ArgumentError("a Jordan element has 27 coordinates")
        xs = [rat(t) for t in xs]
        return cls(
            tuple(xs[:3]),
            Oct.from_coords(xs[3:11]),
            Oct.from_coords(xs[11:19]),
            Oct.from_coords(xs[19:27]),
        )

    def __add__(self, o: "JordanElem") -> "JordanElem":
        return JordanElem(
            tuple(s + t for s, t in zip(self.c, o.c)), self.x + o.x, self.y + o.y, self.z + o.z
        )

    def __sub__(self, o: "JordanElem") -> "JordanElem":
        return self + o.scale(-1)

    def scale(self, t: Scalar) -> "JordanElem":
        return JordanElem(tuple(t * s for s in self.c), self.x.scale(t), self.y.scale(t), self.z.scale(t))

    def is_zero(self) -> bool:
        return not any(self.coords())

    def matrix(self) -> List[List[Oct]]:
        c1, c2, c3 = self.c
        return [
            [Oct.scalar(c1), self.x, self.y],
            [oct_conj(self.x), Oct.scalar(c2), self.z],
            [oct_conj(self.y), oct_conj(self.z), Oct.scalar(c3)],
        ]

    @classmethod
    def from_matrix(cls, m: List[List[Oct]]) -> "JordanElem":
        """Read back a Hermitian octonion matrix, checking the Hermitian shape."""
        diag = []
        for i in range(3):
            d = m[i][i]
            if d.a != d.b or any(d.u) or any(d.v):
                raise InternalConsistencyError("diagonal entry is not a scalar")
            diag.append(d.a)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            if m[j][i] != oct_conj(m[i][j]):
                raise InternalConsistencyError("matrix is not Hermitian")
        return cls(tuple(diag), m[0][1], m[0][2], m[1][2])

    def to_json(self) -> dict:
        return {
            "c": [rat_str(t) for t in self.c],
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "z": self.z.to_json(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "JordanElem":
        try:
            c = tuple(rat(t) for t in d["c"])
            if len(c) != 3:
                raise ArgumentError("a Jordan element has 3 diagonal entries")
            return cls(c, Oct.from_json(d["x"]), Oct.from_json(d["y"]), Oct.from_json(d["z"]))
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed Jordan element JSON: {exc}") from None


def jordan_det(m: JordanElem) -> Scalar:
    """Cubic norm c1c2c3 - c1N(z) - c2N(y) - c3N(x) + T((xz)y*)."""
    c1, c2, c3 = m.c
    return (
        c1 * c2 * c3
        - c1 * oct_norm(m.z)
        - c2 * oct_norm(m.y)
        - c3 * oct_norm(m.x)
        + oct_trace(oct_mul(oct_mul(m.x, m.z), oct_conj(m.y)))
    )


def jordan_adj(m: JordanElem) -> JordanElem:
    """Freudenthal adjugate m#: the quadratic map with adj(adj(m)) = det(m) m."""
    c1, c2, c3 = m.c
    x, y, z = m.x, m.y, m.z
    return JordanElem(
        (c2 * c3 - oct_norm(z), c1 * c3 - oct_norm(y), c1 * c2 - oct_norm(x)),
        oct_mul(y, oct_conj(z)) - x.scale(c3),
        oct_mul(x, z) - y.scale(c2),
        oct_mul(oct_conj(x), y) - z.scale(c1),
    )


def jordan_trace(m: JordanElem) -> Scalar:
    return m.c[0] + m.c[1] + m.c[2]


def _matmul(p: List[List[Oct]], q: List[List[Oct]]) -> List[List[Oct]]:
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = ZERO
            for k in range(3):
                acc = acc + oct_mul(p[i][k], q[k][j])
            row.append(acc)
        out.append(row)
    return out


def jordan_product(a: JordanElem, b: JordanElem) -> JordanElem:
    """a o b = (ab + ba)/2 computed on the 3x3 octonion matrices."""
    ab = _matmul(a.matrix(), b.matrix())
    ba = _matmul(b.matrix(), a.matrix())
    half = rat("1/2")
    return JordanElem.from_matrix([[(ab[i][j] + ba[i][j]).scale(half) for j in range(3)] for i in range(3)])


def jordan_rank(m: JordanElem) -> int:
    if m.is_zero():
        return 0
    if jordan_adj(m).is_zero():
        return 1
    if jordan_det(m) == 0:
        return 2
    return 3


def op2_chart(u: Oct, w: Oct) -> JordanElem:
    """Rank-one completion [[1, u, w], [u*, N(u), u*w], [w*, w*u, N(w)]]."""
    m = JordanElem((1, oct_norm(u), oct_norm(w)), u, w, oct_mul(oct_conj(u), w))
    if not jordan_adj(m).is_zero():
        raise InternalConsistencyError("chart point does not have rank one")
    return m
