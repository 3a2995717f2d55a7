"""Triangulations, consistency checks, invariants, duality at complex level."""

import random
from fractions import Fraction

import pytest

from flagdual import (DecoratedComplex, Decoration, FacePairing,
                      GaussRational, IdealTriangulation, beta_complex,
                      canonicalize_six, check_edges, check_faces,
                      complete_from_minimal, conjugate_complex, delta_exact,
                      dilog_D, dualize, duality_defect, eval_D, is_consistent,
                      volume_complex)
from flagdual.bundled import (GEOMETRIC_SHAPE, cr_complex,
                              figure_eight_complex,
                              figure_eight_triangulation, hyperbolic_complex,
                              single_tetra_triangulation,
                              twisted_double_complex)
from flagdual.duality import beta_defect
from flagdual.errors import MalformedPairing, NotVeryGeneric

from helpers import classical_edge_products, rand_exact_tetra

FIG8_VOLUME = 2.029883212819307


def test_single_tetra_orbit_counts():
    k = single_tetra_triangulation()
    orbits = k.edge_orbits()
    assert len(orbits) == 12
    assert all(len(o) == 1 for o in orbits)
    classes = k.edge_classes()
    assert len(classes) == 6
    assert not k.is_closed()
    assert len(k.boundary_faces()) == 4


def test_figure_eight_edge_classes():
    k = figure_eight_triangulation()
    orbits = k.edge_orbits()
    assert sorted(len(o) for o in orbits) == [6, 6, 6, 6]
    classes = k.edge_classes()
    assert len(classes) == 2
    for cls in classes:
        assert cls.size == 6
        assert len(cls.reverse_members) == 6
        # reversal really reverses
        rev = {(t, j, i) for (t, i, j) in cls.members}
        assert rev == set(cls.reverse_members)
    assert k.is_closed()


def test_malformed_pairings_rejected():
    with pytest.raises(MalformedPairing):
        FacePairing(0, (1, 2, 2), 1, (1, 2, 3))
    with pytest.raises(MalformedPairing):
        FacePairing.from_json({"tetA": 0, "faceA": [1, 2, 3],
                               "tetB": 1, "faceB": [1, 2, 3],
                               "map": [[1, 1], [2, 1], [3, 3]]})
    with pytest.raises(MalformedPairing):
        IdealTriangulation(1, [FacePairing(0, (1, 2, 3), 0, (2, 1, 3))])
    # one face in two pairings
    p1 = FacePairing(0, (1, 2, 3), 1, (1, 2, 3))
    p2 = FacePairing(0, (3, 2, 1), 1, (2, 4, 3))
    with pytest.raises(MalformedPairing):
        IdealTriangulation(2, [p1, p2])


def test_figure_eight_geometric_consistency():
    dc = figure_eight_complex()
    faces = check_faces(dc)
    edges = check_edges(dc)
    assert faces.max_residual < 1e-12
    assert edges.max_residual < 1e-12
    assert is_consistent(dc, tol=1e-12)


def test_perturbed_face_flagged():
    # a uniform shape change keeps all hyperbolic faces at 1, so perturb
    # one minimal coordinate only: that moves the face coordinates
    dc = figure_eight_complex()
    z = GEOMETRIC_SHAPE
    bad = DecoratedComplex(
        dc.triangulation,
        Decoration([dc.coords[0],
                    complete_from_minimal((z * (1 + 1e-3), z, z, z))]))
    report = check_faces(bad)
    assert not report.passed(1e-9)
    assert report.failures(1e-9)


def test_random_gluing_generically_fails():
    rng = random.Random(91)
    _, c0 = rand_exact_tetra(rng)
    _, c1 = rand_exact_tetra(rng)
    dc = DecoratedComplex(figure_eight_triangulation(), Decoration([c0, c1]))
    faces = check_faces(dc)
    edges = check_edges(dc)
    assert faces.failures() or edges.failures()
    assert len(faces.failures()) + len(edges.failures()) >= 1


def test_single_unglued_tetra_inconsistent():
    rng = random.Random(92)
    _, c = rand_exact_tetra(rng)
    dc = DecoratedComplex(single_tetra_triangulation(), Decoration([c]))
    report = check_edges(dc)
    # singleton classes demand z_ij = 1, impossible for generic values
    assert not report.passed()
    assert len(report.failures()) == 6


def test_edge_equations_match_classical_gluing_oracle():
    dc = figure_eight_complex()
    report = check_edges(dc)
    oracle = classical_edge_products(dc.triangulation, GEOMETRIC_SHAPE)
    for item, prod in zip(report.items, oracle):
        pf, _ = item.value
        assert abs(pf - prod) < 1e-12


def test_beta_and_volume_figure_eight():
    dc = figure_eight_complex()
    b = beta_complex(dc)
    assert len(b) == 1
    gen, coeff = b.terms[0]
    assert coeff == 8
    assert abs(gen - GEOMETRIC_SHAPE) < 1e-15
    assert abs(volume_complex(dc) - FIG8_VOLUME) < 1e-9
    assert abs(volume_complex(dc) - 2 * dilog_D(GEOMETRIC_SHAPE)) < 1e-12


def test_conjugation_negates_volume():
    dc = figure_eight_complex()
    assert abs(volume_complex(conjugate_complex(dc))
               + volume_complex(dc)) < 1e-12


def test_empty_complex():
    dc = DecoratedComplex(IdealTriangulation(0, []), Decoration([]))
    assert beta_complex(dc).is_zero()
    assert volume_complex(dc) == 0.0
    assert check_faces(dc).passed() and check_edges(dc).passed()


def test_dualize_figure_eight_is_identity():
    dc = figure_eight_complex()
    dd = dualize(dc)
    for a, b in zip(dc.coords, dd.coords):
        assert a.same_as(b, tol=1e-12)
    assert is_consistent(dd, tol=1e-9)


def test_dualize_involution_and_consistency_preserved():
    tdc = twisted_double_complex()
    assert is_consistent(tdc)
    dd = dualize(tdc)
    assert check_faces(dd).passed() and check_edges(dd).passed()
    back = dualize(dd)
    for a, b in zip(tdc.coords, back.coords):
        assert a.same_as(b)


def test_dualize_names_offending_tetrahedron():
    bad = complete_from_minimal((GaussRational(2), GaussRational(3),
                                 GaussRational(-4), GaussRational(5)))
    rng = random.Random(93)
    _, good = rand_exact_tetra(rng)
    dc = DecoratedComplex(figure_eight_triangulation(),
                          Decoration([good, bad]))
    with pytest.raises(NotVeryGeneric, match="tetrahedron 1"):
        dualize(dc)
    with pytest.raises(NotVeryGeneric, match="tetrahedron 1"):
        duality_defect(dc)


def test_duality_defect_figure_eight_cancels_exactly():
    dc = figure_eight_complex()
    defect = duality_defect(dc)
    assert len(defect) >= 1  # eight raw face terms, merged
    assert sum(abs(n) for _, n in defect.terms) == 8 or defect.is_zero()
    assert canonicalize_six(defect).is_zero()
    assert abs(eval_D(defect)) < 1e-12


def test_duality_defect_single_tetra_is_beta_defect():
    rng = random.Random(94)
    _, c = rand_exact_tetra(rng)
    dc = DecoratedComplex(single_tetra_triangulation(), Decoration([c]))
    assert duality_defect(dc) == beta_defect(c)


def test_duality_defect_numeric_identity_on_complex():
    dc = figure_eight_complex(shape=0.4 + 1.1j)
    defect = duality_defect(dc)
    gap = 4 * (volume_complex(dc) - volume_complex(dualize(dc)))
    assert abs(gap - eval_D(defect)) < 1e-9


def test_twisted_double_orbit_structure():
    from flagdual.bundled import twisted_double_triangulation
    k = twisted_double_triangulation()
    orbits = k.edge_orbits()
    # every oriented edge of tet 0 pairs with exactly one of tet 1
    assert len(orbits) == 12
    assert all(len(o) == 2 for o in orbits)
    assert len(k.edge_classes()) == 6
    assert k.is_closed()


def test_conjugation_commutes_with_dualize_at_complex_level():
    tdc = twisted_double_complex()
    lhs = dualize(conjugate_complex(tdc))
    rhs = conjugate_complex(dualize(tdc))
    for a, b in zip(lhs.coords, rhs.coords):
        assert a.same_as(b)


def test_twisted_double_exact_end_to_end():
    tdc = twisted_double_complex()
    assert tdc.triangulation.is_closed()
    assert tdc.decoration.exact
    assert check_faces(tdc).passed() and check_edges(tdc).passed()
    b = beta_complex(tdc)
    assert delta_exact(b).is_zero()
    assert canonicalize_six(duality_defect(tdc)).is_zero()
    # the dual decoration has the same invariant
    assert canonicalize_six(b - beta_complex(dualize(tdc))).is_zero()


def test_twisted_double_arbitrary_exact_decorations():
    rng = random.Random(95)
    for _ in range(10):
        m, _ = rand_exact_tetra(rng, span=6)
        tdc = twisted_double_complex(m)
        assert check_faces(tdc).passed() and check_edges(tdc).passed()
        assert delta_exact(beta_complex(tdc)).is_zero()


def test_consistent_cr_decorated_complex_has_zero_volume():
    # a closed complex decorated entirely with spherical CR flags and
    # satisfying all pairings: its beta has vanishing dilogarithm
    from flagdual import FlagTuple, cr_tetrahedron, heisenberg_null_point
    from flagdual.bundled import twisted_double_triangulation
    rng = random.Random(96)
    pts = [heisenberg_null_point(
        complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)),
        rng.uniform(-1.5, 1.5)) for _ in range(4)]
    t0 = cr_tetrahedron(pts)
    t1 = FlagTuple([t0[1], t0[0], t0[2], t0[3]])
    dc = DecoratedComplex(twisted_double_triangulation(),
                          Decoration.from_flags([t0, t1]))
    assert dc.triangulation.is_closed()
    assert check_faces(dc).passed(1e-10) and check_edges(dc).passed(1e-10)
    assert abs(volume_complex(dc)) < 1e-9
    assert abs(eval_D(beta_complex(dc))) < 1e-9


def test_cr_complex_loads_and_measures():
    dc = cr_complex()
    assert len(dc.coords) == 1
    assert dc.decoration.flag_tuples is not None
    assert not dc.decoration.exact
    # CR tetrahedra are very generic
    assert all(dc.decoration.very_generic_flags())


def test_hyperbolic_complex_real_volume_zero():
    dc = hyperbolic_complex(GaussRational(Fraction(3, 2)))
    assert volume_complex(dc) == 0.0
    dual = dualize(dc)
    for a, b in zip(dc.coords, dual.coords):
        assert a.same_as(b)
