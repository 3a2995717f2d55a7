"""Coordinates of 3- and 4-flag configurations.

A generic tetrahedron of flags carries 12 edge coordinates z_ij (one per
oriented edge) and 4 face coordinates z_ijk (triple ratios of the
boundary-oriented faces).  Four edge coordinates determine everything:

* around each vertex the three outgoing coordinates are cyclically
  related,  z_ik = 1/(1 - z_ij)  and  z_il = 1 - 1/z_ij  for (i,j,k,l)
  an even permutation of (1,2,3,4), so their product is -1;
* each face coordinate is minus the product of the three edge
  coordinates pointing at the opposite vertex, z_ijk = -z_il z_jl z_kl.

TetraCoords stores all 16 values redundantly and re-validates these
relations on construction, so corrupted decorations are detected at the
door.  The even-permutation bookkeeping is frozen in the module tables
below (EVEN_COMPLETION and CANONICAL_FACES); the same tables are quoted
in the README since they are the single most error-prone convention.
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import NamedTuple

from .errors import DegenerateInput, OutOfDomain
from .flags import Flag, FlagTuple
from .prebloch import FormalSum, eval_D
from .projective import _is_negligible, _norm2, det3, vdot
from .scalars import (conj, is_exact, nearly_equal, normalize_values,
                      scalar_is_zero)

VERTICES = (1, 2, 3, 4)

# float tolerances: relation validation is loose enough to accept rounding
# of independently measured coordinates, tight enough to flag corruption
VALIDATION_TOL = 1e-6
VERY_GENERIC_TOL = 1e-10


def perm_parity(seq) -> int:
    """+1 for even permutations, -1 for odd."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _build_even_completion():
    table = {}
    for i, j in permutations(VERTICES, 2):
        k, l = (v for v in VERTICES if v not in (i, j))
        table[(i, j)] = (k, l) if perm_parity((i, j, k, l)) == 1 else (l, k)
    return table


# (i, j) -> (k, l) with (i, j, k, l) an even permutation of (1, 2, 3, 4)
EVEN_COMPLETION = _build_even_completion()

# boundary-oriented faces: (i, j, k) with (i, j, k, missing) even,
# keyed by the lexicographically smallest even rotation
CANONICAL_FACES = ((1, 2, 3), (2, 4, 3), (1, 3, 4), (1, 4, 2))
FACE_OPPOSITE = {(1, 2, 3): 4, (2, 4, 3): 1, (1, 3, 4): 2, (1, 4, 2): 3}

_ROTATIONS = {}
for _f in CANONICAL_FACES:
    for _r in range(3):
        _ROTATIONS[_f[_r:] + _f[:_r]] = (_f, 1)
        _rev = tuple(reversed(_f[_r:] + _f[:_r]))
        _ROTATIONS[_rev] = (_f, -1)


def face_class(i, j, k):
    """(canonical triple, +1/-1) for even/odd orderings of a face."""
    try:
        return _ROTATIONS[(i, j, k)]
    except KeyError:
        raise ValueError(f"not a face triple: {(i, j, k)}") from None


class MinimalCoords(NamedTuple):
    """The chart (z12, z21, z34, z43) on generic tetrahedra."""

    z12: object
    z21: object
    z34: object
    z43: object


MINIMAL_EDGES = ((1, 2), (2, 1), (3, 4), (4, 3))


def _check_domain(z, what):
    if is_exact(z):
        if z == 0 or z == 1:
            raise OutOfDomain(f"{what} = {z} lies in {{0,1}}")
        return
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)) \
            or w == 0 or w == 1:
        raise OutOfDomain(f"{what} = {w} lies in {{0,1}} (or is not finite)")


def _relation_holds(lhs, rhs) -> bool:
    if is_exact(lhs):
        return lhs == rhs
    return nearly_equal(lhs, rhs, VALIDATION_TOL)


class TetraCoords:
    """All 16 coordinates of a generic tetrahedron, validated."""

    __slots__ = ("edge", "face")

    def __init__(self, edge, face, _validate=True):
        if set(edge) != set(EVEN_COMPLETION):
            raise ValueError("need exactly the 12 oriented edges")
        ekeys = sorted(edge)
        values = normalize_values(
            [edge[k] for k in ekeys] + [face[k] for k in CANONICAL_FACES],
            "tetra coordinates")
        self.edge = dict(zip(ekeys, values[:12]))
        self.face = dict(zip(CANONICAL_FACES, values[12:]))
        for key, z in self.edge.items():
            _check_domain(z, f"edge coordinate z{key[0]}{key[1]}")
        for key, z in self.face.items():
            if scalar_is_zero(z):
                raise OutOfDomain(f"face coordinate {key} is zero")
        if _validate:
            self._validate()

    def _validate(self):
        for (i, j), (k, l) in EVEN_COMPLETION.items():
            zij = self.edge[(i, j)]
            if not _relation_holds(self.edge[(i, k)], 1 / (1 - zij)):
                raise DegenerateInput(
                    f"vertex relation broken: z{i}{k} != 1/(1-z{i}{j})")
            if not _relation_holds(self.edge[(i, l)], 1 - 1 / zij):
                raise DegenerateInput(
                    f"vertex relation broken: z{i}{l} != 1-1/z{i}{j}")
        for i in VERTICES:
            prod = 1
            for j in VERTICES:
                if j != i:
                    prod = prod * self.edge[(i, j)]
            if not _relation_holds(prod, -1 + 0 * prod):
                raise DegenerateInput(f"vertex product at {i} is not -1")
        for f in CANONICAL_FACES:
            i, j, k = f
            l = FACE_OPPOSITE[f]
            rhs = -(self.edge[(i, l)] * self.edge[(j, l)] * self.edge[(k, l)])
            if not _relation_holds(self.face[f], rhs):
                raise DegenerateInput(
                    f"face relation broken at {f}: z_ijk != -z_il z_jl z_kl")

    # -- lookups -------------------------------------------------------------

    def edge_value(self, i, j):
        return self.edge[(i, j)]

    def face_value(self, i, j, k):
        """Triple ratio at any vertex ordering (reciprocal when odd)."""
        canon, sign = face_class(i, j, k)
        v = self.face[canon]
        return v if sign == 1 else 1 / v

    def minimal(self) -> MinimalCoords:
        return MinimalCoords(*(self.edge[e] for e in MINIMAL_EDGES))

    @property
    def exact(self) -> bool:
        return is_exact(self.edge[(1, 2)])

    def conjugate(self) -> "TetraCoords":
        return TetraCoords({k: conj(v) for k, v in self.edge.items()},
                           {k: conj(v) for k, v in self.face.items()},
                           _validate=False)

    def same_as(self, other: "TetraCoords", tol=0.0) -> bool:
        """Exact equality, or closeness when a float tolerance is given."""
        for k in self.edge:
            a, b = self.edge[k], other.edge[k]
            if not (a == b if tol == 0.0 else nearly_equal(a, b, tol)):
                return False
        for k in CANONICAL_FACES:
            a, b = self.face[k], other.face[k]
            if not (a == b if tol == 0.0 else nearly_equal(a, b, tol)):
                return False
        return True

    def to_json(self):
        from .scalars import scalar_to_json
        return {
            "edges": {f"{i}{j}": scalar_to_json(v)
                      for (i, j), v in self.edge.items()},
            "faces": {"".join(map(str, k)): scalar_to_json(v)
                      for k, v in self.face.items()},
        }

    @classmethod
    def from_json(cls, data, backend="auto"):
        from .scalars import scalar_from_json
        edges = {(int(k[0]), int(k[1])): scalar_from_json(v, backend)
                 for k, v in data["edges"].items()}
        faces = {tuple(int(c) for c in k): scalar_from_json(v, backend)
                 for k, v in data["faces"].items()}
        return cls(edges, faces)

    def __repr__(self):
        m = self.minimal()
        return (f"TetraCoords(z12={m.z12!r}, z21={m.z21!r}, "
                f"z34={m.z34!r}, z43={m.z43!r})")


# -- measuring coordinates from flags -----------------------------------------

def triple_ratio(f1: Flag, f2: Flag, f3: Flag):
    """f1(x2) f2(x3) f3(x1) / (f1(x3) f2(x1) f3(x2)), scale-independent."""
    flags = (f1, f2, f3)
    vals = {}
    for a in range(3):
        for b in range(3):
            if a != b:
                v = vdot(flags[a].line, flags[b].point)
                scale = _norm2(flags[a].line) * _norm2(flags[b].point) + 1e-300
                if _is_negligible(v, scale):
                    raise DegenerateInput(
                        f"triple_ratio pairing f{a + 1}(x{b + 1}) vanishes")
                vals[(a, b)] = v
    return (vals[(0, 1)] * vals[(1, 2)] * vals[(2, 0)]) / \
        (vals[(0, 2)] * vals[(1, 0)] * vals[(2, 1)])


def edge_coords(t: FlagTuple) -> TetraCoords:
    """Measure all 16 coordinates of a generic 4-flag tuple.

    Edge values use z_ij = f_i(x_k) det(x_i,x_j,x_l) / (f_i(x_l)
    det(x_i,x_j,x_k)) with (i,j,k,l) even; face values are measured
    independently as triple ratios, so the construction-time validation
    cross-checks the two routes.
    """
    if len(t) != 4:
        raise DegenerateInput("edge_coords needs exactly four flags")
    x = {v: t[v - 1].point for v in VERTICES}
    f = {v: t[v - 1].line for v in VERTICES}

    pairings = {}
    for i in VERTICES:
        for j in VERTICES:
            if i != j:
                v = vdot(f[i], x[j])
                if _is_negligible(v, _norm2(f[i]) * _norm2(x[j]) + 1e-300):
                    raise DegenerateInput(f"pairing f{i}(x{j}) vanishes")
                pairings[(i, j)] = v

    base_det = {}
    for key in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
        d = det3(*(x[v] for v in key))
        scale = 1e-300
        if not is_exact(d):
            scale += _norm2(x[key[0]]) * _norm2(x[key[1]]) * _norm2(x[key[2]])
        if _is_negligible(d, scale):
            raise DegenerateInput(
                f"points x{key[0]}, x{key[1]}, x{key[2]} are collinear")
        base_det[key] = d

    def det(i, j, k):
        key = tuple(sorted((i, j, k)))
        d = base_det[key]
        return d if perm_parity((i, j, k)) == 1 else -d

    edges = {}
    for (i, j), (k, l) in EVEN_COMPLETION.items():
        edges[(i, j)] = (pairings[(i, k)] * det(i, j, l)) / \
            (pairings[(i, l)] * det(i, j, k))
    faces = {}
    for (i, j, k) in CANONICAL_FACES:
        n = pairings[(i, j)] * pairings[(j, k)] * pairings[(k, i)]
        faces[(i, j, k)] = n / (pairings[(i, k)] * pairings[(j, i)]
                                * pairings[(k, j)])
    return TetraCoords(edges, faces)


# -- the minimal chart ---------------------------------------------------------

def complete_from_minimal(m) -> TetraCoords:
    """Fill all 16 coordinates from (z12, z21, z34, z43)."""
    m = MinimalCoords(*normalize_values(tuple(m), "minimal coordinates"))
    for name, z in zip(m._fields, m):
        _check_domain(z, name)
    edges = {}
    for (i, j), z in zip(MINIMAL_EDGES, m):
        k, l = EVEN_COMPLETION[(i, j)]
        edges[(i, j)] = z
        edges[(i, k)] = 1 / (1 - z)
        edges[(i, l)] = 1 - 1 / z
    faces = {}
    for fkey in CANONICAL_FACES:
        i, j, k = fkey
        l = FACE_OPPOSITE[fkey]
        faces[fkey] = -(edges[(i, l)] * edges[(j, l)] * edges[(k, l)])
    return TetraCoords(edges, faces)


def reconstruct(m) -> FlagTuple:
    """A flag tuple in normal position whose coordinates restrict to m.

    This is the explicit section of the minimal chart: the four points
    are the standard frame and the covectors are rational in the four
    coordinates.
    """
    m = MinimalCoords(*normalize_values(tuple(m), "minimal coordinates"))
    for name, z in zip(m._fields, m):
        _check_domain(z, name)
    z12, z21, z34, z43 = m
    one = 1 - (z12 - z12)  # backend-matching 1
    zero = z12 - z12
    a = 1 / (1 - z43)
    flags = [
        Flag((one, zero, zero), (zero, 1 - 1 / z12, -one)),
        Flag((zero, one, zero), (1 - z21, zero, -one)),
        Flag((zero, zero, one), (z34, -one, zero)),
        Flag((one, one, one), (a, 1 - a, -one)),
    ]
    return FlagTuple(flags)


# -- invariants ----------------------------------------------------------------

def beta_tetra(c: TetraCoords) -> FormalSum:
    """[z12] + [z21] + [z34] + [z43] in the pre-Bloch group."""
    return FormalSum([(z, 1) for z in c.minimal()])


def volume_tetra(c: TetraCoords) -> float:
    """One quarter of D applied to beta."""
    return eval_D(beta_tetra(c)) / 4.0


def very_generic(c: TetraCoords) -> bool:
    """True when no face coordinate equals -1 (duality stays regular)."""
    for v in c.face.values():
        if is_exact(c.edge[(1, 2)]):
            if v == -1:
                return False
        else:
            w = complex(v)
            if abs(w + 1) <= VERY_GENERIC_TOL * (1 + abs(w)):
                return False
    return True
