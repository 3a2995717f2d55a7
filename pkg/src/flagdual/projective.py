"""Projective points, lines, cross-ratios and 3x3 linear algebra.

Everything here is generic over the two scalar backends: points at
infinity are handled through homogeneous coordinates, never by affine
special cases, and all degeneracy predicates are exact zero tests in the
exact backend and scale-relative thresholds (1e-10) in the float backend.
"""

from __future__ import annotations

import math

from .errors import DegenerateInput, SingularMatrix
from .scalars import (is_exact, normalize_values, scalar_is_zero, to_complex)

DEGENERACY_TOL = 1e-10


def _norm2(values) -> float:
    # only meaningful for float tolerances; huge exact entries may not
    # fit a double, and their scale is irrelevant anyway
    try:
        return math.sqrt(sum(abs(to_complex(v)) ** 2 for v in values))
    except OverflowError:
        return math.inf


def _is_negligible(value, scale) -> bool:
    """Zero test: exact in the exact backend, relative in float."""
    if is_exact(value):
        return scalar_is_zero(value)
    return abs(to_complex(value)) <= DEGENERACY_TOL * scale


class ProjPoint1:
    """A point [a : b] of the projective line."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a, b = normalize_values((a, b), "homogeneous pair")
        if scalar_is_zero(a) and scalar_is_zero(b):
            raise DegenerateInput("homogeneous pair (0, 0)")
        self.a = a
        self.b = b

    @classmethod
    def affine(cls, value):
        return cls(value, value * 0 + 1)

    @classmethod
    def infinity(cls, one=1):
        return cls(one, one * 0)

    def same_point(self, other: "ProjPoint1") -> bool:
        d = self.a * other.b - other.a * self.b
        return _is_negligible(d, _norm2((self.a, self.b))
                              * _norm2((other.a, other.b)) + 1e-300)

    def __repr__(self):
        return f"[{self.a} : {self.b}]"


def cross_ratio(x1: ProjPoint1, x2: ProjPoint1, x3: ProjPoint1,
                x4: ProjPoint1):
    """Cross-ratio of four pairwise distinct points of P^1.

    Normalized so that ([1:0], [0:1], [1:1], [z:1]) maps to z, i.e. the
    value at x4 of the fractional linear map sending x1, x2, x3 to
    infinity, 0, 1.
    """
    pts = (x1, x2, x3, x4)
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i].same_point(pts[j]):
                raise DegenerateInput(
                    f"cross_ratio of coincident points (args {i + 1} and {j + 1})")

    def m(p, q):
        return p.a * q.b - q.a * p.b

    num = m(x1, x3) * m(x2, x4)
    den = m(x1, x4) * m(x2, x3)
    if scalar_is_zero(den):
        raise DegenerateInput("cross_ratio denominator vanished")
    return num / den


# -- 3-vectors (points and covectors of CP^2) --------------------------------

def vdot(u, x):
    """Pairing u0*x0 + u1*x1 + u2*x2 (no conjugation)."""
    return u[0] * x[0] + u[1] * x[1] + u[2] * x[2]


def vcross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def det3(c1, c2, c3):
    """Determinant of the matrix with columns c1, c2, c3."""
    return vdot(c1, vcross(c2, c3))


def triple_is_degenerate(c1, c2, c3) -> bool:
    """True when det(c1,c2,c3) vanishes (scale-relative in float)."""
    d = det3(c1, c2, c3)
    scale = _norm2(c1) * _norm2(c2) * _norm2(c3) + 1e-300
    return _is_negligible(d, scale)


def pairing_is_zero(u, x) -> bool:
    return _is_negligible(vdot(u, x), _norm2(u) * _norm2(x) + 1e-300)


def proportional(u, v) -> bool:
    """Scale equivalence of two nonzero triples."""
    c = vcross(u, v)
    scale = _norm2(u) * _norm2(v) + 1e-300
    return all(_is_negligible(ci, scale) for ci in c)


class Mat3:
    """An exactly-invertible-when-it-should-be 3x3 matrix of scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs 3x3 entries")
        flat = normalize_values([e for r in rows for e in r],
                                "matrix entries")
        self.rows = (flat[0:3], flat[3:6], flat[6:9])

    @classmethod
    def identity(cls, one=1):
        z = one * 0
        return cls(((one, z, z), (z, one, z), (z, z, one)))

    @classmethod
    def from_columns(cls, c1, c2, c3):
        return cls(tuple(zip(c1, c2, c3)))

    def det(self):
        return det3(*self.columns())

    def columns(self):
        return tuple(zip(*self.rows))

    def transpose(self) -> "Mat3":
        return Mat3(self.columns())

    def apply(self, v):
        return tuple(vdot(r, v) for r in self.rows)

    def __matmul__(self, other: "Mat3") -> "Mat3":
        cols = other.columns()
        return Mat3.from_columns(*(self.apply(c) for c in cols))

    def inverse(self) -> "Mat3":
        d = self.det()
        scale = math.prod(_norm2(r) for r in self.rows) + 1e-300
        if _is_negligible(d, scale):
            raise SingularMatrix("matrix determinant is zero")
        r = self.rows
        cof = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                a = r[(i + 1) % 3][(j + 1) % 3] * r[(i + 2) % 3][(j + 2) % 3]
                b = r[(i + 1) % 3][(j + 2) % 3] * r[(i + 2) % 3][(j + 1) % 3]
                cof[j][i] = (a - b) / d  # transpose of the cofactor matrix
        return Mat3(cof)

    def scaled(self, s) -> "Mat3":
        return Mat3(tuple(tuple(e * s for e in r) for r in self.rows))

    def __repr__(self):
        return f"Mat3({self.rows!r})"


def restrict_to_p1(points):
    """Coordinatize collinear CP^2 points on their common line.

    The first two points serve as the projective basis; each point
    p = alpha*base1 + beta*base2 maps to [alpha : beta].  Requires at
    least two points, the first two distinct.
    """
    if len(points) < 2:
        raise DegenerateInput("need at least two points")
    u, v = points[0], points[1]
    # pick the coordinate pair where the basis 2x2 minor is most robust
    best, best_size = None, None
    for (r, s) in ((0, 1), (0, 2), (1, 2)):
        m = u[r] * v[s] - u[s] * v[r]
        size = abs(to_complex(m))
        if best is None or size > best_size:
            best, best_size = (r, s, m), size
    r, s, m = best
    if _is_negligible(m, _norm2(u) * _norm2(v) + 1e-300):
        raise DegenerateInput("basis points of the line coincide")
    out = []
    for p in points:
        alpha = p[r] * v[s] - p[s] * v[r]
        beta = u[r] * p[s] - u[s] * p[r]
        out.append(ProjPoint1(alpha / m, beta / m))
    return out
