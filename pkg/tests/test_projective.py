"""Cross-ratio and 3x3 linear algebra."""

import random

import pytest

from flagdual import GaussRational, Mat3, ProjPoint1, cross_ratio
from flagdual.errors import DegenerateInput, SingularMatrix
from flagdual.projective import restrict_to_p1

from helpers import (apply_mobius, rand_gauss_rational, rand_mobius_exact,
                     rand_p1_points_exact, rand_pgl3_exact)


def _affine(*vals):
    return [ProjPoint1.affine(GaussRational(v) if isinstance(v, int) else v)
            for v in vals]


def test_normalization_infinity_zero_one():
    z = GaussRational(7, -3)
    x = cross_ratio(ProjPoint1.infinity(), ProjPoint1(0, 1),
                    ProjPoint1(1, 1), ProjPoint1(z, 1))
    assert x == z


def test_affine_example():
    # X(2,0,1,w) = w/(2-w); at w = 4 this is -2
    pts = _affine(2, 0, 1, 4)
    assert cross_ratio(*pts) == GaussRational(-2)


def test_coincident_points_rejected():
    pts = _affine(2, 2, 1, 4)
    with pytest.raises(DegenerateInput):
        cross_ratio(*pts)


def test_moebius_invariance_exact():
    rng = random.Random(21)
    for _ in range(100):
        pts = rand_p1_points_exact(rng, 4)
        x = cross_ratio(*pts)
        m = rand_mobius_exact(rng)
        moved = [apply_mobius(m, p) for p in pts]
        assert cross_ratio(*moved) == x


def test_moebius_invariance_float():
    rng = random.Random(22)
    for _ in range(200):
        vals = []
        while len(vals) < 4:
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if all(abs(z - w) > 0.1 for w in vals):
                vals.append(z)
        pts = [ProjPoint1.affine(v) for v in vals]
        x = cross_ratio(*pts)
        a, b, c, d = (complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                      for _ in range(4))
        if abs(a * d - b * c) < 0.05:
            continue
        moved = [ProjPoint1(a * p.a + b * p.b, c * p.a + d * p.b)
                 for p in pts]
        y = cross_ratio(*moved)
        assert abs(y - x) <= 1e-12 * (1 + abs(x))


def test_swap_middle_pair_identity():
    rng = random.Random(23)
    for _ in range(50):
        p1, p2, p3, p4 = rand_p1_points_exact(rng, 4)
        assert cross_ratio(p1, p2, p3, p4) == 1 - cross_ratio(p1, p3, p2, p4)


def test_multiplicative_cocycle_six_points():
    rng = random.Random(24)
    for _ in range(50):
        a1, a2, b1, b2, b3, b4 = rand_p1_points_exact(rng, 6)
        lhs = cross_ratio(a1, a2, b1, b4)
        rhs = (cross_ratio(a1, a2, b1, b2)
               * cross_ratio(a1, a2, b2, b3)
               * cross_ratio(a1, a2, b3, b4))
        assert lhs == rhs


def test_mat3_examples():
    ident = Mat3.identity(GaussRational(1))
    assert ident.det() == 1
    assert ident.inverse().rows == ident.rows
    diag = Mat3(((GaussRational(1), 0, 0), (0, GaussRational(2), 0),
                 (0, 0, GaussRational(3))))
    assert diag.det() == 6


def test_mat3_inverse_exact_self_consistency():
    rng = random.Random(25)
    ident = Mat3.identity(GaussRational(1))
    for _ in range(50):
        m = rand_pgl3_exact(rng)
        assert (m @ m.inverse()).rows == ident.rows
        assert m.transpose().transpose().rows == m.rows


def test_singular_matrix_rejected():
    rows = ((GaussRational(1), GaussRational(2), GaussRational(3)),
            (GaussRational(2), GaussRational(4), GaussRational(6)),
            (GaussRational(0), GaussRational(1), GaussRational(1)))
    with pytest.raises(SingularMatrix):
        Mat3(rows).inverse()


def test_mat3_apply_and_det_of_columns():
    m = Mat3(((GaussRational(0), GaussRational(1), GaussRational(0)),
              (GaussRational(0), GaussRational(0), GaussRational(1)),
              (GaussRational(1), GaussRational(0), GaussRational(0))))
    v = (GaussRational(5), GaussRational(7), GaussRational(11))
    assert m.apply(v) == (GaussRational(7), GaussRational(11),
                          GaussRational(5))
    assert m.det() == 1  # cyclic permutation is even


def test_restrict_to_p1_recovers_cross_ratio():
    # four collinear points a*u + b*v: their P^1 coordinates reproduce
    # the cross-ratio of the (a : b) parameters
    rng = random.Random(26)
    for _ in range(30):
        u = tuple(rand_gauss_rational(rng) for _ in range(3))
        v = tuple(rand_gauss_rational(rng) for _ in range(3))
        params = rand_p1_points_exact(rng, 4)
        pts = [tuple(p.a * uc + p.b * vc for uc, vc in zip(u, v))
               for p in params]
        try:
            coords = restrict_to_p1(pts)
        except DegenerateInput:
            continue  # u, v accidentally proportional
        assert cross_ratio(*coords) == cross_ratio(*params)
