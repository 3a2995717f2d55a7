"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import math
from fractions import Fraction

from scipy.integrate import quad

from flagdual import (FlagTuple, GaussRational, Mat3, ProjPoint1,
                      complete_from_minimal, reconstruct, very_generic)


# -- random exact data ----------------------------------------------------------

def rand_fraction(rng, span=9):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_gauss_rational(rng, span=9, allow_real=True):
    """Random nonzero Gaussian rational outside {0, 1}."""
    while True:
        re = rand_fraction(rng, span)
        im = Fraction(0) if (allow_real and rng.random() < 0.4) \
            else rand_fraction(rng, span)
        q = GaussRational(re, im)
        if q != 0 and q != 1:
            return q


def rand_exact_minimal(rng, span=9):
    return tuple(rand_gauss_rational(rng, span) for _ in range(4))


def rand_exact_tetra(rng, span=9):
    """(minimal, coords) for a random very generic exact tetrahedron."""
    while True:
        m = rand_exact_minimal(rng, span)
        try:
            c = complete_from_minimal(m)
        except Exception:
            continue
        if very_generic(c):
            return m, c


def rand_exact_flag_tetra(rng, span=9):
    m, c = rand_exact_tetra(rng, span)
    return reconstruct(m), c


def rand_float_scalar(rng, lo=0.15, hi=2.5):
    """Random complex avoiding disks around 0 and 1."""
    while True:
        z = complex(rng.uniform(-hi, hi), rng.uniform(-hi, hi))
        if abs(z) > lo and abs(z - 1) > lo:
            return z


def rand_float_tetra(rng, margin=1e-3):
    """Random very generic float TetraCoords (faces away from -1)."""
    while True:
        m = tuple(rand_float_scalar(rng) for _ in range(4))
        try:
            c = complete_from_minimal(m)
        except Exception:
            continue
        if all(abs(complex(v) + 1) > margin for v in c.face.values()):
            return c


def rand_mobius_exact(rng, span=5):
    """Invertible 2x2 exact matrix acting on the projective line."""
    while True:
        a, b, c, d = (rand_gauss_rational(rng, span) for _ in range(4))
        if a * d - b * c != 0:
            return (a, b, c, d)


def apply_mobius(m, p: ProjPoint1) -> ProjPoint1:
    a, b, c, d = m
    return ProjPoint1(a * p.a + b * p.b, c * p.a + d * p.b)


def rand_pgl3_exact(rng, span=4):
    while True:
        rows = [[rand_gauss_rational(rng, span) for _ in range(3)]
                for _ in range(3)]
        m = Mat3(rows)
        try:
            if m.det() != 0:
                return m
        except Exception:
            continue


def rand_p1_points_exact(rng, count, span=9):
    """Pairwise distinct exact points of P^1 (occasionally infinity)."""
    pts = []
    while len(pts) < count:
        if rng.random() < 0.1:
            p = ProjPoint1(GaussRational(1), GaussRational(0))
        else:
            p = ProjPoint1(rand_gauss_rational(rng, span), GaussRational(1))
        if not any(p.same_point(q) for q in pts):
            pts.append(p)
    return pts


def relabel_tuple(t: FlagTuple, perm) -> FlagTuple:
    """FlagTuple with positions permuted: new[i] = old[perm[i]] (1-based)."""
    return FlagTuple([t[perm[i] - 1] for i in (1, 2, 3, 4)])


# -- quadrature oracle for the dilogarithm --------------------------------------

def dilog_quadrature(z: complex) -> float:
    """Bloch-Wigner D straight from its defining integral.

    D(x) = arg(1-x) log|x| - Im int_0^x log(1-t) dt/t, the integral taken
    along the straight segment (t = s x).  Slow; used only as the
    independent oracle for the series implementation.  Keep z off the
    real ray [1, inf) so the segment avoids the log singularity.
    """
    z = complex(z)
    if z.imag == 0:
        return 0.0  # D vanishes on the real line

    def integrand(s):
        w = 1 - s * z
        return math.atan2(w.imag, w.real) / s if s > 0 else -z.imag

    im_integral = quad(integrand, 0, 1, epsabs=1e-14, epsrel=1e-13,
                       limit=300)[0]
    return math.atan2((1 - z).imag, (1 - z).real) * math.log(abs(z)) \
        - im_integral


def classical_edge_products(triangulation, shape):
    """Classical gluing-equation oracle for hyperbolic decorations.

    Every tetrahedron has one shape z; opposite edge pairs carry z,
    z' = 1/(1-z), z'' = 1 - 1/z.  Returns the directed product around
    every edge class, computed without any TetraCoords machinery.
    """
    def parameter(i, j):
        pair = frozenset((i, j))
        if pair in (frozenset((1, 2)), frozenset((3, 4))):
            return shape
        if pair in (frozenset((1, 3)), frozenset((2, 4))):
            return 1 / (1 - shape)
        return 1 - 1 / shape

    out = []
    for cls in triangulation.edge_classes():
        prod = 1
        for (_, i, j) in cls.members:
            prod *= parameter(i, j)
        out.append(prod)
    return out
