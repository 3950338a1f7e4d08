"""Sampled Osserman verdicts, taxonomy matching, eigenbundle bounds."""

import numpy as np
import pytest

from affinecurv.classifier import (
    AFFINE,
    NEITHER,
    PROJECTIVE,
    AdamsResult,
    BundlePartition,
    InconsistencyError,
    adams_admissible,
    bundle_partition,
    classify_structure,
    is_projective_affine_osserman,
    match_taxonomy,
    sample_sphere,
)
from affinecurv.constructors import StructureSpec, constant_curvature, realize
from affinecurv.spectral import spectrum
from affinecurv.tensor_core import CurvatureTensor, reduced_jacobi


def projection_tensor(m, rank):
    """Sectional-style tensor of a rank-deficient projection.  Directions in
    the kernel have nilpotent Jacobi operator, the rest do not."""
    P = np.diag([1.0] * rank + [0.0] * (m - rank))
    entries = np.einsum("jk,il->ijkl", P, P) - np.einsum("ik,jl->ijkl", P, P)
    return CurvatureTensor(entries)


def indefinite_surface_tensor():
    """2-dim model whose single reduced eigenvalue is x1^2 - 2 x2^2: the
    sign flips with direction, so spectra only match under a negative scale."""
    e = np.zeros((2, 2, 2, 2))
    e[0, 1, 0, 1] = -1.0
    e[1, 0, 0, 1] = 1.0
    e[0, 1, 1, 0] = -2.0
    e[1, 0, 1, 0] = 2.0
    return CurvatureTensor(e)


# -- sampling -------------------------------------------------------------


def test_sample_sphere_layout():
    pts = sample_sphere(4, 6, seed=3)
    assert len(pts) == 4 + 1 + 6
    for i in range(4):
        assert np.array_equal(pts[i], np.eye(4)[i])
    assert np.allclose(pts[4], np.full(4, 0.5))
    for v in pts:
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)


def test_sample_sphere_deterministic():
    a = sample_sphere(5, 10, seed=42)
    b = sample_sphere(5, 10, seed=42)
    for u, v in zip(a, b):
        assert np.array_equal(u, v)
    c = sample_sphere(5, 10, seed=43)
    assert not np.array_equal(a[-1], c[-1])


def test_sample_sphere_validation():
    with pytest.raises(ValueError):
        sample_sphere(0, 4, seed=0)
    with pytest.raises(ValueError):
        sample_sphere(3, -1, seed=0)


# -- verdicts -------------------------------------------------------------


def test_constant_curvature_is_projective():
    verdict = is_projective_affine_osserman(constant_curvature(5), n_samples=16)
    assert verdict.status == PROJECTIVE
    assert verdict.mu.entries == (1, 4)
    assert verdict.mu.kinds == ("zero", "real")
    assert verdict.worst_residual <= 1e-10
    assert verdict.scales[0] == 1.0
    assert all(abs(s - 1.0) <= 1e-10 for s in verdict.scales)


def test_zero_tensor_is_affine_osserman():
    verdict = is_projective_affine_osserman(CurvatureTensor(np.zeros((3,) * 4)))
    assert verdict.status == AFFINE
    assert verdict.mu.nilpotent
    assert verdict.mu.entries == (3,)
    assert verdict.scales == () and verdict.worst_residual == 0.0


def test_projection_tensor_is_neither():
    verdict = is_projective_affine_osserman(projection_tensor(5, 3), n_samples=8)
    assert verdict.status == NEITHER
    assert verdict.mu is None
    assert verdict.worst_residual == float("inf")


def test_negative_scale_probe():
    verdict = is_projective_affine_osserman(indefinite_surface_tensor(), n_samples=8)
    assert verdict.status == NEITHER
    assert verdict.negative_scale_match


def test_symmetry_precheck():
    bad = np.zeros((3,) * 4)
    bad[0, 0, 0, 0] = 1.0  # breaks antisymmetry in the first two slots
    with pytest.raises(ValueError):
        is_projective_affine_osserman(CurvatureTensor(bad))


def rank_one_ricci_tensor():
    # surface tensor A(x, y)z = rho(y, z) x - rho(x, z) y with
    # rho = [[-1, -1], [-1, -1]]: the single reduced eigenvalue is
    # -(x1 + x2)^2, collapsing to zero only on the line spanned by (1, -1)
    rho = -np.ones((2, 2))
    delta = np.eye(2)
    entries = np.einsum("jk,il->ijkl", rho, delta) - np.einsum(
        "ik,jl->ijkl", rho, delta
    )
    return CurvatureTensor(entries)


def test_extra_directions_expose_hidden_collapse():
    A = rank_one_ricci_tensor()
    # default probes almost surely miss the null line and see a
    # projectively constant spectrum
    assert is_projective_affine_osserman(A, n_samples=8).status == PROJECTIVE
    probed = is_projective_affine_osserman(
        A, n_samples=8, extra_directions=[(1.0, -1.0)]
    )
    assert probed.status == NEITHER


def test_extra_directions_validation():
    A = rank_one_ricci_tensor()
    with pytest.raises(ValueError):
        is_projective_affine_osserman(A, extra_directions=[(1.0, 0.0, 0.0)])
    with pytest.raises(ValueError):
        is_projective_affine_osserman(A, extra_directions=[(0.0, 0.0)])


def test_verdict_scaling_invariance():
    A = realize(StructureSpec("2-c", (4.0,), (1 + 2j,)), 6)
    B = CurvatureTensor(3.0 * A.entries)
    for T in (A, B):
        verdict = is_projective_affine_osserman(T, n_samples=16)
        assert verdict.status == PROJECTIVE
        assert verdict.mu.entries == (1, 1, 2, 2)


def test_verdict_json_shape():
    d = is_projective_affine_osserman(constant_curvature(3), n_samples=4).to_json_dict()
    assert d["status"] == PROJECTIVE
    assert d["mu"] is not None and d["spectrum"] is not None
    assert len(d["scales"]) == len(d["residuals"]) == 3 + 1 + 4


# -- taxonomy matching ----------------------------------------------------


@pytest.mark.parametrize(
    "case,m,lams,nus",
    [
        ("1", 5, (2.0,), ()),
        ("2-b", 6, (4.0, 1.0), ()),
        ("2-c", 10, (4.0,), (1 + 2j,)),
        # slots of equal multiplicity are canonically filled in ascending
        # value order, so give them that way for an identity round trip
        ("3-d", 12, (3.0, 5.0, 7.0, 1.0), ()),
        ("3-h", 12, (6.0,), (1 + 1j, 3 + 2j)),
    ],
)
def test_classify_structure_round_trip(case, m, lams, nus):
    spec = StructureSpec(case, lams, nus)
    got = classify_structure(realize(spec, m), n_samples=16)
    assert got.case == case and got.m == m
    assert np.allclose(got.lambdas, lams, atol=1e-8)
    assert np.allclose(got.nus, nus, atol=1e-8)


def test_classify_structure_requires_projective():
    with pytest.raises(ValueError):
        classify_structure(CurvatureTensor(np.zeros((3,) * 4)))


def test_match_taxonomy_rejects_pairs_at_odd_m():
    R = np.array([[1.0, -2.0], [2.0, 1.0]])
    M = np.block([[R, np.zeros((2, 2))], [np.zeros((2, 2)), 3.0 * np.eye(2)]])
    with pytest.raises(InconsistencyError):
        match_taxonomy(spectrum(M), 5)


def test_match_taxonomy_unlisted_dimension():
    S = spectrum(np.eye(7))
    assert match_taxonomy(S, 8) == "unlisted"


def test_match_taxonomy_unmatched_pattern():
    # three distinct reals cannot occur at m = 2 mod 4
    S = spectrum(np.diag([1.0, 2.0, 3.0, 3.0, 3.0]))
    assert match_taxonomy(S, 6) == "unlisted"


# -- eigenbundle partitions -----------------------------------------------


def test_bundle_partition_from_spectrum():
    A = realize(StructureSpec("2-c", (4.0,), (1 + 2j,)), 6)
    S = spectrum(reduced_jacobi(A, np.eye(6)[0]))
    part = bundle_partition(S, 6)
    assert part.dims == (1, 4)
    assert part.kinds == ("real", "complex-pair")


def test_bundle_partition_canonical_order():
    part = BundlePartition(m=8, dims=(4, 1, 2), kinds=("complex-pair", "real", "real"))
    assert part.dims == (1, 2, 4)
    assert part.kinds == ("real", "real", "complex-pair")


def test_bundle_partition_validation():
    with pytest.raises(ValueError):
        BundlePartition(m=6, dims=(3,), kinds=("complex-pair",))  # odd pair rank
    with pytest.raises(ValueError):
        BundlePartition(m=6, dims=(1, 3), kinds=("real", "real"))  # sum != m - 1
    with pytest.raises(ValueError):
        BundlePartition(m=6, dims=(), kinds=())
    with pytest.raises(ValueError):
        BundlePartition(m=6, dims=(5,), kinds=("mystery",))
    with pytest.raises(ValueError):
        BundlePartition(m=6, dims=(0, 5), kinds=("real", "real"))


ADAMS_TABLE = [
    (3, (2,), ("real",), "admissible"),
    (3, (1, 1), ("real", "real"), "inadmissible"),
    (5, (4,), ("complex-pair",), "admissible"),
    (6, (5,), ("real",), "admissible"),
    (6, (1, 4), ("real", "complex-pair"), "admissible"),
    (6, (1, 1, 3), ("real", "real", "real"), "inadmissible"),
    (6, (2, 3), ("real", "real"), "inadmissible"),
    (12, (11,), ("real",), "admissible"),
    (12, (1, 10), ("real", "complex-pair"), "admissible"),
    (12, (1, 1, 9), ("real", "real", "real"), "admissible"),
    (12, (1, 1, 1, 8), ("real", "real", "real", "complex-pair"), "admissible"),
    (12, (1, 1, 1, 1, 7), ("real",) * 4 + ("real",), "inadmissible"),
    (12, (2, 2, 3, 4), ("real", "real", "real", "complex-pair"), "inadmissible"),
    (8, (1,) * 7, ("real",) * 7, "unconstrained"),
    (16, (1, 2, 4, 8), ("real", "real", "complex-pair", "complex-pair"), "unconstrained"),
]


@pytest.mark.parametrize("m,dims,kinds,expected", ADAMS_TABLE)
def test_adams_table(m, dims, kinds, expected):
    part = BundlePartition(m=m, dims=dims, kinds=kinds)
    result = adams_admissible(m, part)
    assert result.status == expected
    if expected == "inadmissible":
        assert result.reason


def test_adams_m_mismatch():
    part = BundlePartition(m=6, dims=(5,), kinds=("real",))
    with pytest.raises(ValueError):
        adams_admissible(10, part)


def test_adams_result_json():
    assert AdamsResult("admissible").to_json_dict() == {
        "status": "admissible",
        "reason": None,
    }
