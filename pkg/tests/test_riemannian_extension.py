"""Cotangent extension metrics and their spectral checks."""

from fractions import Fraction

import numpy as np
import pytest

from affinecurv.polynomial_geometry import (
    connection_from_symbols,
    curvature_homogeneous_connection,
    flat_connection,
    plane_wave_connection,
)
from affinecurv.polynomials import Polynomial
from affinecurv.riemannian_extension import (
    PolyMetric,
    check_extension_theorems,
    default_point,
    deformed_extension,
    levi_civita_block,
    modified_extension,
)


def var(i, n):
    return Polynomial.variable(i, n)


# -- metrics --------------------------------------------------------------


def test_deformed_top_block_entries():
    # base symbol G_11^3 = x2 contributes B_11 = -2 y_3 x2; with base
    # variables first, y_3 is variable index 5 of 6
    g = deformed_extension(plane_wave_connection())
    want = Fraction(-2) * var(5, 6) * var(1, 6)
    assert g.top_block[0][0] == want
    for i in range(3):
        for j in range(3):
            if (i, j) != (0, 0):
                assert g.top_block[i][j].is_zero


def test_deformed_phi_added():
    phi00 = var(0, 3) * var(0, 3)
    g = deformed_extension(flat_connection(3), Phi=[[phi00, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert g.top_block[0][0] == var(0, 6) * var(0, 6)
    assert g.top_block[1][1].is_zero


def test_modified_top_block_entries():
    g = modified_extension(flat_connection(2))
    # pure y_i y_j block over a flat base
    for i in range(2):
        for j in range(2):
            assert g.top_block[i][j] == var(2 + i, 4) * var(2 + j, 4)


def test_metric_block_layout():
    g = deformed_extension(flat_connection(2))
    one = Polynomial.constant(1, 4)
    for i in range(2):
        assert g.components[i][2 + i] == one
        assert g.components[2 + i][i] == one
        for j in range(2):
            assert g.components[2 + i][2 + j].is_zero


def test_metric_inverse_exact():
    g = deformed_extension(curvature_homogeneous_connection(2))
    inv = g.inverse()
    n = g.dim
    for a in range(n):
        for b in range(n):
            total = Polynomial.zero(n)
            for c in range(n):
                total = total + g.components[a][c] * inv[c][b]
            want = Polynomial.constant(1 if a == b else 0, n)
            assert total == want


def test_metric_neutral_signature():
    g = modified_extension(curvature_homogeneous_connection(3))
    G = g.gram_at([0.3, -0.2, 0.5, 1.0, -0.7, 0.1])
    vals = np.linalg.eigvalsh(G)
    assert sum(v > 0 for v in vals) == 3
    assert sum(v < 0 for v in vals) == 3


def test_metric_symmetry_validation():
    with pytest.raises(ValueError):
        PolyMetric(2, [[0, var(0, 4)], [0, 0]])


def test_metric_immutable():
    g = deformed_extension(flat_connection(2))
    with pytest.raises(AttributeError):
        g.m = 3


def test_gram_exact_rational():
    g = modified_extension(flat_connection(2))
    G = g.gram_exact([0, 0, Fraction(1, 2), Fraction(1, 3)])
    assert G[0][0] == Fraction(1, 4)
    assert G[0][1] == Fraction(1, 6)
    assert G[0][2] == 1


# -- Levi-Civita ----------------------------------------------------------


def test_levi_civita_metric_compatibility():
    # re-derive d_a g_bc = G_ab^d g_dc + G_ac^d g_bd as polynomials,
    # independently of the construction's internal certificate
    g = modified_extension(flat_connection(2))
    C = levi_civita_block(g)
    n = g.dim
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = g.components[b][c].diff(a)
                for d in range(n):
                    lhs = lhs - C.gamma[a][b][d] * g.components[d][c]
                    lhs = lhs - C.gamma[a][c][d] * g.components[b][d]
                assert lhs.is_zero


def test_levi_civita_fiber_symbols_vanish():
    # the metric is linear in the fiber variables for a deformed extension,
    # so no symbol carries two fiber indices
    g = deformed_extension(plane_wave_connection())
    C = levi_civita_block(g)
    m = 3
    for a in range(m, 2 * m):
        for b in range(m, 2 * m):
            for k in range(2 * m):
                assert C.gamma[a][b][k].is_zero


# -- theorem checks -------------------------------------------------------


def test_deformed_over_nilpotent_base():
    report = check_extension_theorems(plane_wave_connection(), n_vectors=4, seed=1)
    assert report.kind == "deformed"
    assert report.base_status == "affine_osserman"
    assert report.clauses == {"nilpotent": True}
    assert report.passed
    for rec in report.records:
        assert rec.method == "exact"
        assert rec.nilpotent is True
        assert rec.max_abs_eigenvalue == 0.0
        assert rec.spectrum is None
    assert sum(r.character == "spacelike" for r in report.records) == 4
    assert sum(r.character == "timelike" for r in report.records) == 4


def test_modified_over_flat_base():
    report = check_extension_theorems(
        flat_connection(2), which="modified", n_vectors=6, seed=0
    )
    assert report.kind == "modified"
    assert report.clauses["spacelike_spectrum"]
    assert report.clauses["timelike_negative"]
    assert report.passed
    m = 2
    for rec in report.records:
        assert rec.method == "numeric"
        sign = 1.0 if rec.character == "spacelike" else -1.0
        got = sorted((v.real * sign, mult) for v, mult in rec.spectrum.items)
        want = [(0.0, 1), (0.25, 2 * m - 2), (1.0, 1)]
        assert len(got) == len(want)
        for (value, mult), (want_v, want_m) in zip(got, want):
            assert abs(value - want_v) <= 1e-6
            assert mult == want_m


def test_deformed_over_projective_base():
    # the extension's Jacobi operators have size-4 Jordan blocks, whose
    # eigenvalues scatter like the fourth root of machine epsilon; cluster
    # at 1e-3 accordingly
    report = check_extension_theorems(
        curvature_homogeneous_connection(3, eps=1), n_vectors=3, seed=2, tol=1e-3
    )
    assert report.base_status == "projective_affine_osserman"
    assert report.clauses == {"projective_spacelike": True, "projective_timelike": True}
    assert report.passed


def test_extension_report_json():
    report = check_extension_theorems(plane_wave_connection(), n_vectors=2, seed=0)
    d = report.to_json_dict()
    assert d["kind"] == "deformed"
    assert d["passed"] is True
    assert len(d["vectors"]) == 4
    assert set(d["clauses"]) == {"nilpotent"}
    assert d["vectors"][0]["method"] == "exact"


def test_default_point():
    pt = default_point(2)
    assert pt == (Fraction(3, 16), Fraction(-5, 16), Fraction(7, 16), Fraction(-9, 16))


def test_point_override():
    pt = tuple(Fraction(k + 1, 7) for k in range(6))
    report = check_extension_theorems(plane_wave_connection(), point=pt, n_vectors=2, seed=0)
    assert report.point == tuple(float(v) for v in pt)
    assert report.passed


# -- validation -----------------------------------------------------------


def test_bad_which():
    with pytest.raises(ValueError):
        check_extension_theorems(flat_connection(2), which="twisted")


def test_modified_rejects_phi():
    with pytest.raises(ValueError):
        check_extension_theorems(flat_connection(2), which="modified", Phi=[[1, 0], [0, 1]])


def test_phi_must_be_symmetric():
    with pytest.raises(ValueError):
        deformed_extension(flat_connection(2), Phi=[[0, 1], [0, 0]])


def test_wrong_point_length():
    with pytest.raises(ValueError):
        check_extension_theorems(flat_connection(2), point=(0, 0))
