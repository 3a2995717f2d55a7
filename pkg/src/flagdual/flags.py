"""Flags in CP^2: incidence, genericity, normalization, constructions.

A flag is an incident (point, line) pair; the line is stored as a
covector triple.  Swapping the two triples under the fixed standard-basis
identification of the plane with its dual gives the duality involution on
flags.  Two families of geometric flags are provided: the Veronese lift
of points of CP^1 (ideal hyperbolic tetrahedra) and tangent flags of the
null sphere of the Hermitian form J (spherical CR tetrahedra).
"""

from __future__ import annotations

from itertools import combinations

from .errors import DegenerateInput, NotOnSphere
from .projective import (Mat3, ProjPoint1, _is_negligible, _norm2, det3,
                         pairing_is_zero, proportional, triple_is_degenerate,
                         vdot)
from .scalars import (GaussRational, check_same_backend, conj, exactify,
                      is_exact, normalize_values, scalar_is_zero)


class Flag:
    """An incident pair (point, line); incidence is checked on construction."""

    __slots__ = ("point", "line")

    def __init__(self, point, line):
        point = tuple(point)
        line = tuple(line)
        if len(point) != 3 or len(line) != 3:
            raise ValueError("flag needs two triples")
        both = normalize_values(point + line, "flag coordinates")
        point, line = both[:3], both[3:]
        if all(scalar_is_zero(c) for c in point):
            raise DegenerateInput("flag point is the zero triple")
        if all(scalar_is_zero(c) for c in line):
            raise DegenerateInput("flag line is the zero triple")
        if not pairing_is_zero(line, point):
            raise DegenerateInput(
                f"flag incidence violated: f(x) = {vdot(line, point)!r}")
        self.point = point
        self.line = line

    def dual(self) -> "Flag":
        return Flag(self.line, self.point)

    def conjugate(self) -> "Flag":
        return Flag(tuple(conj(c) for c in self.point),
                    tuple(conj(c) for c in self.line))

    def __repr__(self):
        return f"Flag(point={self.point!r}, line={self.line!r})"


def dual_flag(f: Flag) -> Flag:
    """The involution (x, f) -> (f, x)."""
    return f.dual()


class FlagTuple:
    """An ordered tuple of flags (3 or 4 of them in practice)."""

    __slots__ = ("flags",)

    def __init__(self, flags):
        self.flags = tuple(flags)
        check_same_backend(
            [c for fl in self.flags for c in fl.point + fl.line],
            "flag tuple coordinates")

    def __len__(self):
        return len(self.flags)

    def __getitem__(self, i):
        return self.flags[i]

    def __iter__(self):
        return iter(self.flags)

    def points(self):
        return [f.point for f in self.flags]

    def lines(self):
        return [f.line for f in self.flags]

    def dual(self) -> "FlagTuple":
        return FlagTuple([f.dual() for f in self.flags])

    def conjugate(self) -> "FlagTuple":
        return FlagTuple([f.conjugate() for f in self.flags])

    def transformed(self, m: Mat3) -> "FlagTuple":
        """Apply a projectivity: points by m, covectors by (m^T)^-1."""
        minv_t = m.inverse().transpose()
        return FlagTuple([Flag(m.apply(f.point), minv_t.apply(f.line))
                          for f in self.flags])


def is_generic(t: FlagTuple) -> bool:
    """All cross pairings f_i(x_j) nonzero and no three points collinear."""
    flags = t.flags
    for i, fi in enumerate(flags):
        for j, fj in enumerate(flags):
            if i != j and pairing_is_zero(fi.line, fj.point):
                return False
    for (i, j, k) in combinations(range(len(flags)), 3):
        if triple_is_degenerate(flags[i].point, flags[j].point,
                                flags[k].point):
            return False
    return True


def is_very_generic(t: FlagTuple) -> bool:
    """Generic, and additionally no three of the lines are concurrent."""
    if not is_generic(t):
        return False
    flags = t.flags
    for (i, j, k) in combinations(range(len(flags)), 3):
        if triple_is_degenerate(flags[i].line, flags[j].line,
                                flags[k].line):
            return False
    return True


def normalize_to_standard(t) -> Mat3:
    """The projectivity sending four general-position points to the frame.

    Accepts a FlagTuple or a plain list of four point triples and returns
    the unique (up to scale) matrix carrying them to [1,0,0], [0,1,0],
    [0,0,1], [1,1,1] in order.
    """
    pts = t.points() if isinstance(t, FlagTuple) else [tuple(p) for p in t]
    if len(pts) != 4:
        raise DegenerateInput("need exactly four points")
    p1, p2, p3, p4 = pts
    d = det3(p1, p2, p3)
    if triple_is_degenerate(p1, p2, p3):
        raise DegenerateInput("first three points are collinear")
    # solve p4 = l1*p1 + l2*p2 + l3*p3 by Cramer's rule
    l1 = det3(p4, p2, p3) / d
    l2 = det3(p1, p4, p3) / d
    l3 = det3(p1, p2, p4) / d
    scale = max(_norm2(p) for p in pts) + 1e-300
    for idx, l in enumerate((l1, l2, l3)):
        if _is_negligible(l, scale):
            raise DegenerateInput(
                f"fourth point is collinear with two others (lambda{idx + 1} = 0)")
    frame = Mat3.from_columns(
        tuple(l1 * c for c in p1),
        tuple(l2 * c for c in p2),
        tuple(l3 * c for c in p3))
    return frame.inverse()


def in_standard_position(t: FlagTuple) -> bool:
    std = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
    pts = t.points()
    if is_exact(pts[0][0]):
        ref = std
    else:
        ref = tuple(tuple(complex(c) for c in s) for s in std)
    return all(proportional(p, s) for p, s in zip(pts, ref))


def hyperbolic_flag(p: ProjPoint1) -> Flag:
    """Veronese lift of a point of CP^1 with its tangent line.

    The point is [x^2, xy, y^2]; the line is the polar of the point with
    respect to the conic xz = y^2, i.e. the covector (c, -2b, a) for a
    point (a, b, c) of the conic.
    """
    x, y = p.a, p.b
    point = (x * x, x * y, y * y)
    line = (point[2], -2 * point[1], point[0])
    return Flag(point, line)


def veronese_tetrahedron(params) -> FlagTuple:
    """Hyperbolic tetrahedron of flags over four CP^1 points."""
    return FlagTuple([hyperbolic_flag(p) for p in params])


def _hermitian_pairing(x, y):
    """<x, y> = conj(y)^T J x with J the antidiagonal unit matrix."""
    return conj(y[0]) * x[2] + conj(y[1]) * x[1] + conj(y[2]) * x[0]


def cr_flag(x) -> Flag:
    """Flag tangent to the null sphere of J at a null point x.

    The line is y -> <y, x>, the unique complex line tangent to S^3 at x;
    its covector is (conj(x2), conj(x1), conj(x0)).
    """
    x = tuple(x)
    h = _hermitian_pairing(x, x)
    if is_exact(h):
        if not scalar_is_zero(h):
            raise NotOnSphere(f"<x,x> = {h} != 0")
    elif abs(complex(h)) > 1e-10 * (_norm2(x) ** 2 + 1e-300):
        raise NotOnSphere(f"<x,x> = {h} != 0")
    line = (conj(x[2]), conj(x[1]), conj(x[0]))
    return Flag(x, line)


def cr_tetrahedron(points) -> FlagTuple:
    return FlagTuple([cr_flag(x) for x in points])


def heisenberg_null_point(y, t):
    """Null point [1, y, -|y|^2/2 + i t] of J (t real; backend follows y)."""
    if is_exact(y):
        y = exactify(y)
        return (GaussRational(1), y,
                -(y * y.conjugate()) / 2 + GaussRational(0, 1) * t)
    y = complex(y)
    return (complex(1), y, complex(-abs(y) ** 2 / 2, float(t)))
