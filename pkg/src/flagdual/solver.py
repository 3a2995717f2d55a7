"""Damped Gauss-Newton solver for the consistency equations.

Unknowns are the 4N minimal coordinates (z12, z21, z34, z43) per
tetrahedron, as one complex vector.  Every other coordinate is one of
the two vertex-relation images of a single minimal coordinate, so each
residual is a product of factors, each factor depending on exactly one
unknown; Jacobians are therefore assembled analytically from logarithmic
derivatives.  Residuals are multiplicative (product minus one), which
avoids logarithm branch tracking entirely.

The linear step uses a least-squares solve: the consistency variety is
typically positive-dimensional, so the Jacobian is rank-deficient at
solutions and the minimum-norm Gauss-Newton step converges to a nearby
point of the variety rather than to one distinguished solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import DecoratedComplex, Decoration, check_edges, check_faces
from .errors import LeftDomain, SolverDiverged, Unsupported
from .tetra import (CANONICAL_FACES, EVEN_COMPLETION, FACE_OPPOSITE,
                    MINIMAL_EDGES, complete_from_minimal, face_class)

DOMAIN_RADIUS = 1e-8  # forbidden disks around 0 and 1
ARMIJO_C1 = 1e-4


def _build_edge_factor_table():
    """(i, j) -> (tag, local minimal index); tags are the three vertex
    relation shapes: m itself, 1/(1-m), 1-1/m."""
    table = {}
    for idx, (i, j) in enumerate(MINIMAL_EDGES):
        k, l = EVEN_COMPLETION[(i, j)]
        table[(i, j)] = ("id", idx)
        table[(i, k)] = ("c1", idx)
        table[(i, l)] = ("c2", idx)
    return table


EDGE_FACTOR = _build_edge_factor_table()

FACE_FACTORS = {
    f: tuple(EDGE_FACTOR[(v, FACE_OPPOSITE[f])] for v in f)
    for f in CANONICAL_FACES
}


def _factor(tag, m):
    """Value and derivative of one coordinate as a function of its
    minimal parent."""
    if tag == "id":
        return m, 1.0 + 0j
    if tag == "c1":
        v = 1.0 / (1.0 - m)
        return v, v * v
    v = 1.0 - 1.0 / m
    return v, 1.0 / (m * m)


class ConsistencySystem:
    """Residuals and analytic Jacobian of the face and edge equations."""

    def __init__(self, triangulation):
        self.triangulation = triangulation
        self.n_unknowns = 4 * triangulation.n
        # each residual: (constant, [(column, tag), ...], label)
        self.products = []
        for n, p in enumerate(triangulation.pairings):
            factors = []
            const = 1.0
            for tet, triple in ((p.tet_a, p.face_a),
                                (p.tet_b, p.face_b_reversed())):
                canon, sign = face_class(*triple)
                # each face value is -(product of three edge factors);
                # an odd ordering contributes the reciprocal, still -1/prod
                const *= -1.0
                for tag, idx in FACE_FACTORS[canon]:
                    factors.append((4 * tet + idx, tag, sign))
            self.products.append((const, factors, f"face pairing {n}"))
        for n, cls in enumerate(triangulation.edge_classes()):
            for direction, members in (("fwd", cls.members),
                                       ("rev", cls.reverse_members)):
                factors = []
                for (tet, i, j) in members:
                    tag, idx = EDGE_FACTOR[(i, j)]
                    factors.append((4 * tet + idx, tag, 1))
                self.products.append(
                    (1.0, factors, f"edge class {n} {direction}"))

    def residuals_and_jacobian(self, m, want_jacobian=True):
        r = np.zeros(len(self.products), dtype=complex)
        jac = np.zeros((len(self.products), self.n_unknowns), dtype=complex) \
            if want_jacobian else None
        for row, (const, factors, _) in enumerate(self.products):
            prod = complex(const)
            dlog = {}
            for col, tag, sign in factors:
                v, dv = _factor(tag, m[col])
                prod *= v if sign == 1 else 1.0 / v
                if want_jacobian:
                    dlog[col] = dlog.get(col, 0.0) + sign * dv / v
            r[row] = prod - 1.0
            if want_jacobian:
                for col, s in dlog.items():
                    jac[row, col] = prod * s
        return r, jac

    def residuals(self, m):
        return self.residuals_and_jacobian(m, want_jacobian=False)[0]


def minimal_vector(dc: DecoratedComplex) -> np.ndarray:
    out = []
    for c in dc.coords:
        out.extend(complex(z) for z in c.minimal())
    return np.array(out, dtype=complex)


def complex_from_vector(dc: DecoratedComplex, m) -> DecoratedComplex:
    coords = [complete_from_minimal(tuple(m[4 * t:4 * t + 4]))
              for t in range(dc.triangulation.n)]
    return DecoratedComplex(dc.triangulation, Decoration(coords))


def _domain_distance(m) -> float:
    return min(float(np.abs(m).min()), float(np.abs(m - 1.0).min())) \
        if len(m) else np.inf


@dataclass
class SolveResult:
    decorated: DecoratedComplex
    iterations: int
    residual: float


def solve_consistency(dc: DecoratedComplex, tol=1e-12, max_iter=100,
                      max_halvings=40) -> SolveResult:
    """Drive the decoration onto the consistency variety.

    Exact decorations are accepted only when already consistent (zero
    iterations, returned unchanged); otherwise the float backend is
    required.  Raises SolverDiverged when damping stalls or the
    iteration budget runs out, LeftDomain when an iterate approaches the
    forbidden values 0 and 1.
    """
    if dc.decoration.exact:
        if check_faces(dc).passed() and check_edges(dc).passed():
            return SolveResult(dc, 0, 0.0)
        raise Unsupported(
            "exact decoration is inconsistent; solving needs the float backend")

    system = ConsistencySystem(dc.triangulation)
    m = minimal_vector(dc)
    if system.n_unknowns == 0:
        return SolveResult(dc, 0, 0.0)

    r = system.residuals(m)
    residual = float(np.max(np.abs(r))) if len(r) else 0.0
    if residual < tol:
        return SolveResult(dc, 0, residual)

    for it in range(1, max_iter + 1):
        r, jac = system.residuals_and_jacobian(m)
        f0 = float(np.vdot(r, r).real)
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        alpha = 1.0
        accepted = False
        for _ in range(max_halvings + 1):
            trial = m + alpha * step
            if _domain_distance(trial) <= DOMAIN_RADIUS:
                alpha *= 0.5
                continue
            r_new = system.residuals(trial)
            f_new = float(np.vdot(r_new, r_new).real)
            if f_new <= (1.0 - ARMIJO_C1 * alpha) * f0:
                m = trial
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            residual = float(np.max(np.abs(system.residuals(m))))
            if _domain_distance(m + step) <= DOMAIN_RADIUS:
                raise LeftDomain(
                    "Newton step driven into the disks around 0 or 1 "
                    f"(residual {residual:.3e})")
            raise SolverDiverged(
                f"no Armijo step accepted after {max_halvings} halvings "
                f"(residual {residual:.3e})", residual)
        residual = float(np.max(np.abs(system.residuals(m))))
        if residual < tol:
            return SolveResult(complex_from_vector(dc, m), it, residual)
    raise SolverDiverged(
        f"no convergence within {max_iter} iterations "
        f"(residual {residual:.3e})", residual)


def finite_difference_jacobian(system: ConsistencySystem, m,
                               h=1e-6) -> np.ndarray:
    """Central differences in each complex coordinate (real step h)."""
    m = np.asarray(m, dtype=complex)
    out = np.zeros((len(system.products), len(m)), dtype=complex)
    for col in range(len(m)):
        e = np.zeros_like(m)
        e[col] = h
        out[:, col] = (system.residuals(m + e)
                       - system.residuals(m - e)) / (2 * h)
    return out
