"""Bundled example triangulations and decorations.

* the one-tetrahedron complex with no pairings (all faces boundary);
* the two-tetrahedron figure-eight knot complement with its geometric
  decoration: the standard census gluing data, two edge classes of six,
  all sixteen coordinates per tetrahedron generated by the shape
  exp(i pi/3);
* a spherical CR decoration of the single tetrahedron built from four
  null points of the Hermitian form;
* an exactly consistent closed complex: a tetrahedron glued to its own
  relabeling under an odd transposition along all four faces (the double
  of the simplex), which satisfies every face and edge equation for any
  generic exact decoration and keeps all coordinates Gaussian-rational.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .complexes import (DecoratedComplex, Decoration, FacePairing,
                        IdealTriangulation)
from .flags import FlagTuple, cr_tetrahedron, heisenberg_null_point
from .scalars import GaussRational
from .tetra import complete_from_minimal, reconstruct

GEOMETRIC_SHAPE = cmath.exp(1j * math.pi / 3)

# Figure-eight knot complement, standard 2-tetrahedron census gluing.
# Vertex maps are recorded on boundary-oriented faces of tetrahedron 0.
_FIG8_PAIRINGS = (
    (0, (2, 4, 3), 1, (2, 3, 4)),
    (0, (1, 3, 4), 1, (2, 4, 1)),
    (0, (1, 4, 2), 1, (3, 1, 4)),
    (0, (1, 2, 3), 1, (3, 2, 1)),
)


def figure_eight_triangulation() -> IdealTriangulation:
    return IdealTriangulation(
        2, [FacePairing(*rec) for rec in _FIG8_PAIRINGS])


def figure_eight_complex(shape=GEOMETRIC_SHAPE) -> DecoratedComplex:
    """The figure-eight complement decorated hyperbolically.

    With the default regular shape the decoration satisfies all
    consistency equations and has volume 2.029883212819307.
    """
    c = complete_from_minimal((shape,) * 4)
    return DecoratedComplex(figure_eight_triangulation(),
                            Decoration([c, c]))


def single_tetra_triangulation() -> IdealTriangulation:
    return IdealTriangulation(1, [])


def hyperbolic_complex(shape) -> DecoratedComplex:
    """One unglued tetrahedron decorated with equal minimal coordinates."""
    return DecoratedComplex(
        single_tetra_triangulation(),
        Decoration([complete_from_minimal((shape,) * 4)]))


_CR_POINTS = (
    (0.4 + 0.9j, 0.7),
    (-1.2 + 0.3j, -0.4),
    (0.8 - 0.6j, 1.1),
    (-0.3 - 1.1j, -0.9),
)


def cr_complex() -> DecoratedComplex:
    """One unglued tetrahedron decorated with spherical CR flags."""
    pts = [heisenberg_null_point(y, t) for y, t in _CR_POINTS]
    t = cr_tetrahedron(pts)
    return DecoratedComplex(single_tetra_triangulation(),
                            Decoration.from_flags([t]))


# -- exactly consistent closed complex ------------------------------------------

_SWAP12 = {1: 2, 2: 1, 3: 3, 4: 4}


def twisted_double_triangulation() -> IdealTriangulation:
    """Two tetrahedra glued along all four faces via the transposition
    swapping vertices 1 and 2 (the double of a simplex)."""
    from .tetra import CANONICAL_FACES
    pairings = []
    for face in CANONICAL_FACES:
        image = tuple(_SWAP12[v] for v in face)
        pairings.append(FacePairing(0, face, 1, image))
    return IdealTriangulation(2, pairings)


def twisted_double_complex(minimal=None) -> DecoratedComplex:
    """Closed complex whose decoration is consistent for ANY generic input.

    Tetrahedron 1 carries the flags of tetrahedron 0 reordered by the
    odd transposition (1 2); relabeling by an odd permutation inverts
    and permutes the coordinates exactly as the gluing demands, so all
    face and edge equations hold identically.  With exact minimal
    coordinates the whole decoration is Gaussian-rational.
    """
    if minimal is None:
        minimal = (GaussRational(Fraction(5, 3), Fraction(1, 2)),
                   GaussRational(Fraction(-2, 7)),
                   GaussRational(3, 1),
                   GaussRational(Fraction(1, 2), Fraction(-3, 4)))
    t0 = reconstruct(minimal)
    t1 = FlagTuple([t0[1], t0[0], t0[2], t0[3]])
    return DecoratedComplex(twisted_double_triangulation(),
                            Decoration.from_flags([t0, t1]))
