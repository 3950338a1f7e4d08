"""Sampling-based Osserman classification of curvature models.

A model is affine Osserman when every Jacobi operator is nilpotent, and
projective affine Osserman when it is not affine Osserman but any two
Jacobi spectra agree up to a positive scale.  The verdict here is
numerical: reduced Jacobi spectra are computed at a deterministic sample
of directions (the standard basis, the normalized all-ones vector, then
seeded Gaussian points on the sphere), all pairs are compared
projectively, and the multiplicity vector is matched against the known
taxonomy of eigenvalue structures for the residue class of m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral
from .constructors import CASE_LABELS, StructureSpec, case_constraints
from .spectral import Spectrum, mu_vector, with_zero
from .tensor_core import check_affine_symmetries, reduced_jacobi

__all__ = [
    "PROJECTIVE",
    "AFFINE",
    "NEITHER",
    "InconsistencyError",
    "OssermanVerdict",
    "BundlePartition",
    "AdamsResult",
    "sample_sphere",
    "is_projective_affine_osserman",
    "classify_structure",
    "match_taxonomy",
    "bundle_partition",
    "adams_admissible",
]

PROJECTIVE = "projective_affine_osserman"
AFFINE = "affine_osserman"
NEITHER = "neither"


class InconsistencyError(RuntimeError):
    """Numerically detected state that the theory rules out."""


def sample_sphere(m, n, seed):
    """m + 1 + n unit vectors: the standard basis, the normalized all-ones
    vector, then n seeded Gaussian directions.  Deterministic per seed."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    rng = np.random.default_rng(seed)
    out = [np.eye(m)[i] for i in range(m)]
    out.append(np.ones(m) / np.sqrt(m))
    while len(out) < m + 1 + n:
        v = rng.standard_normal(m)
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            continue
        out.append(v / nrm)
    return out


@dataclass(frozen=True)
class OssermanVerdict:
    status: str
    spectrum: Spectrum | None
    mu: spectral.MuVector | None
    worst_residual: float
    scales: tuple
    residuals: tuple
    n_samples: int
    seed: int
    tol: float
    negative_scale_match: bool = False

    def to_json_dict(self):
        return {
            "status": self.status,
            "spectrum": None if self.spectrum is None else self.spectrum.to_json_dict(),
            "mu": None if self.mu is None else self.mu.to_json_dict(),
            "worst_residual": float(self.worst_residual),
            "scales": [float(s) for s in self.scales],
            "residuals": [float(r) for r in self.residuals],
            "n_samples": int(self.n_samples),
            "seed": int(self.seed),
            "tol": float(self.tol),
            "negative_scale_match": bool(self.negative_scale_match),
        }


def _full_spectra(A, samples, tol):
    spectra = []
    for X in samples:
        S = spectral.spectrum(reduced_jacobi(A, X), cluster_tol=tol)
        spectra.append(with_zero(S))
    return spectra


def is_projective_affine_osserman(A, n_samples=64, seed=0, tol=1e-8,
                                  extra_directions=()):
    """Deterministic sampled verdict; see the module docstring.

    All samples are computed first and aggregated afterwards, so the
    result does not depend on evaluation order.  Input must pass the
    curvature symmetry check.

    extra_directions are normalized and appended to the probe set.
    Callers who know where the spectrum can degenerate (a measure-zero
    locus that random probes almost surely miss) force those directions
    in this way.
    """
    report = check_affine_symmetries(A)
    if not report.passed:
        raise ValueError(
            "input fails the curvature symmetries (antisymmetry defect %g, "
            "cyclic defect %g)" % (report.antisymmetry_defect, report.bianchi_defect)
        )
    if n_samples < 1:
        raise ValueError("need at least one random sample")
    samples = sample_sphere(A.dim, n_samples, seed)
    for v in extra_directions:
        arr = np.asarray(v, dtype=float)
        if arr.shape != (A.dim,):
            raise ValueError("extra direction has the wrong dimension")
        nrm = np.linalg.norm(arr)
        if nrm == 0.0:
            raise ValueError("extra direction must be nonzero")
        samples.append(arr / nrm)
    spectra = _full_spectra(A, samples, tol)
    zero_flags = [spectral.is_zero_spectrum(S) for S in spectra]

    if all(zero_flags):
        return OssermanVerdict(
            AFFINE, spectra[0], mu_vector(spectra[0]), 0.0, (), (),
            n_samples, seed, tol,
        )
    if any(zero_flags):
        # Some directions nilpotent, others not: no global scale can exist.
        return OssermanVerdict(
            NEITHER, spectra[0], None, float("inf"), (), (),
            n_samples, seed, tol,
        )

    worst = 0.0
    negative = False
    ok = True
    for i in range(len(spectra)):
        for j in range(i + 1, len(spectra)):
            match = spectral.projective_match(spectra[i], spectra[j], tol)
            if match is None:
                ok = False
                s_pos = max(abs(v) for v, _ in spectra[i].nonzero_items()) / max(
                    abs(v) for v, _ in spectra[j].nonzero_items()
                )
                if spectral._match_with_scale(spectra[i], spectra[j], -s_pos, tol) is not None:
                    negative = True
            else:
                worst = max(worst, match[1])
    if not ok:
        return OssermanVerdict(
            NEITHER, spectra[0], None, float("inf"), (), (),
            n_samples, seed, tol, negative_scale_match=negative,
        )

    mus = {mu_vector(S).entries for S in spectra}
    if len(mus) != 1:
        return OssermanVerdict(
            NEITHER, spectra[0], None, float("inf"), (), (),
            n_samples, seed, tol,
        )

    scales = []
    residuals = []
    for S in spectra:
        s, r = spectral.projective_match(S, spectra[0], tol)
        scales.append(s)
        residuals.append(r)
    return OssermanVerdict(
        PROJECTIVE, spectra[0], mu_vector(spectra[0]), worst,
        tuple(scales), tuple(residuals), n_samples, seed, tol,
    )


# -- taxonomy matching ----------------------------------------------------


def _reduced_pattern(S):
    """(sorted real (value, mult) list, sorted pair (value, mult) list)."""
    reals = sorted(
        ((v.real, m) for v, m in S.items if v.imag == 0.0), key=lambda t: t[0]
    )
    pairs = sorted(
        ((v, m) for v, m in S.items if v.imag > 0.0), key=lambda t: (t[0].real, t[0].imag)
    )
    return reals, pairs


def _candidate_cases(m):
    if m % 2 == 1:
        return [c for c in CASE_LABELS if c == "1"]
    if m % 4 == 2:
        return [c for c in CASE_LABELS if c.startswith("2-")]
    if m % 8 == 4:
        return [c for c in CASE_LABELS if c.startswith("3-")]
    return []  # m = 0 mod 8: no listed eigenvalue structures


def match_taxonomy(S, m, tol=1e-8):
    """Match a reduced Jacobi spectrum against the eigenvalue-structure
    taxonomy for dimension m.  Returns a StructureSpec or "unlisted".

    A complex pair at odd m contradicts the classification and raises
    InconsistencyError.
    """
    reals, pairs = _reduced_pattern(S)
    if m % 2 == 1 and pairs:
        raise InconsistencyError(
            "complex Jacobi eigenvalues detected at odd dimension m=%d" % m
        )
    real_mults = sorted(mm for _, mm in reals)
    pair_mults = sorted(mm for _, mm in pairs)
    for case in _candidate_cases(m):
        want_real, want_pair = case_constraints(case, m)
        if sorted(want_real) != real_mults or sorted(want_pair) != pair_mults:
            continue
        # Assign eigenvalues to declaration slots: slots with equal
        # multiplicity are filled in ascending value order.
        lam_pool = sorted(reals, key=lambda t: (t[1], t[0]))
        nu_pool = sorted(pairs, key=lambda t: (t[1], t[0].real, t[0].imag))
        lambdas = [None] * len(want_real)
        nus = [None] * len(want_pair)
        for slot in sorted(range(len(want_real)), key=lambda i: (want_real[i], i)):
            for idx, (value, mm) in enumerate(lam_pool):
                if mm == want_real[slot]:
                    lambdas[slot] = value
                    lam_pool.pop(idx)
                    break
        for slot in sorted(range(len(want_pair)), key=lambda i: (want_pair[i], i)):
            for idx, (value, mm) in enumerate(nu_pool):
                if mm == want_pair[slot]:
                    nus[slot] = value
                    nu_pool.pop(idx)
                    break
        if any(v is None for v in lambdas) or any(v is None for v in nus):
            continue
        return StructureSpec(case=case, lambdas=tuple(lambdas), nus=tuple(nus), m=m)
    return "unlisted"


def classify_structure(A, n_samples=64, seed=0, tol=1e-8):
    """Verdict plus eigenvalue structure fitted at the first sample (e1).

    Requires a projective verdict; anything else raises ValueError.
    """
    verdict = is_projective_affine_osserman(A, n_samples=n_samples, seed=seed, tol=tol)
    if verdict.status != PROJECTIVE:
        raise ValueError("model is %s; only projective models carry a structure" % verdict.status)
    X0 = np.eye(A.dim)[0]
    S = spectral.spectrum(reduced_jacobi(A, X0), cluster_tol=tol)
    return match_taxonomy(S, A.dim, tol)


# -- eigenbundle partitions and the sphere bound --------------------------


@dataclass(frozen=True)
class BundlePartition:
    """Dimensions of the eigenspace bundles over the unit sphere of R^m.

    A real eigenvalue of multiplicity k contributes one bundle of rank k;
    a conjugate pair of multiplicity k contributes a single rank-2k
    bundle.  Ranks must sum to m - 1.
    """

    m: int
    dims: tuple
    kinds: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        kinds = tuple(self.kinds)
        if len(dims) != len(kinds):
            raise ValueError("dims and kinds must align")
        if not dims:
            raise ValueError("empty partition")
        if any(d < 1 for d in dims):
            raise ValueError("bundle ranks must be positive")
        for d, k in zip(dims, kinds):
            if k not in ("real", "complex-pair"):
                raise ValueError("unknown bundle kind %r" % (k,))
            if k == "complex-pair" and d % 2:
                raise ValueError("a conjugate-pair bundle has even rank, got %d" % d)
        if sum(dims) != self.m - 1:
            raise ValueError(
                "bundle ranks sum to %d, expected m - 1 = %d" % (sum(dims), self.m - 1)
            )
        order = sorted(range(len(dims)), key=lambda i: (dims[i], kinds[i]))
        object.__setattr__(self, "dims", tuple(dims[i] for i in order))
        object.__setattr__(self, "kinds", tuple(kinds[i] for i in order))


def bundle_partition(S, m):
    """Partition extracted from a reduced Jacobi spectrum."""
    reals, pairs = _reduced_pattern(S)
    dims = [mm for _, mm in reals] + [2 * mm for _, mm in pairs]
    kinds = ["real"] * len(reals) + ["complex-pair"] * len(pairs)
    return BundlePartition(m=m, dims=tuple(dims), kinds=tuple(kinds))


@dataclass(frozen=True)
class AdamsResult:
    status: str  # 'admissible' | 'inadmissible' | 'unconstrained'
    reason: str | None = None

    def to_json_dict(self):
        return {"status": self.status, "reason": self.reason}


def adams_admissible(m, partition):
    """Gate a bundle partition by the sphere vector-field bounds.

    With m odd a continuous eigenbundle decomposition of the sphere's
    tangent bundle must be trivial (one bundle of rank m - 1).  For
    m = 2 mod 4 at most two bundles may occur and one must have rank at
    least m - 2; for m = 4 mod 8 at most four bundles with one of rank at
    least m - 4.  For m = 0 mod 8 the bound is vacuous.
    """
    if partition.m != m:
        raise ValueError("partition was built for m=%d, not m=%d" % (partition.m, m))
    count = len(partition.dims)
    top = max(partition.dims)
    if m % 2 == 1:
        if count == 1:
            return AdamsResult("admissible")
        return AdamsResult(
            "inadmissible", "odd m admits a single eigenbundle, got %d" % count
        )
    if m % 4 == 2:
        limit, floor = 2, m - 2
    elif m % 8 == 4:
        limit, floor = 4, m - 4
    else:
        return AdamsResult("unconstrained")
    if count > limit:
        return AdamsResult(
            "inadmissible", "at most %d eigenbundles allowed for m=%d, got %d" % (limit, m, count)
        )
    if top < floor:
        return AdamsResult(
            "inadmissible",
            "largest bundle rank %d is below the floor %d for m=%d" % (top, floor, m),
        )
    return AdamsResult("admissible")
