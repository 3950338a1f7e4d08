"""Neutral-signature metrics on the cotangent bundle of an affine base.

For a torsion-free connection on R^m with symbols G_ij^k, coordinates are
(x1..xm, y1..ym) and the metrics considered here have the block form

    g = [[ B(x, y), Id ],
         [ Id,      0  ]],      inverse  [[ 0,  Id       ],
                                          [ Id, -B(x, y) ]],

with two choices of the top block:

    deformed:  B_ij = -2 y_k G_ij^k + Phi_ij(x)
    modified:  B_ij = y_i y_j - 2 y_k G_ij^k

The Levi-Civita connection and its curvature are computed exactly (the
block inverse is polynomial), after which Jacobi operators of unit
spacelike/timelike vectors are examined.  The deformed metric over a base
whose Jacobi operators are all nilpotent has nilpotent Jacobi operators
itself; over a projective affine Osserman base its spacelike (and
timelike) Jacobi spectra are projectively constant.  The modified metric
over such a nilpotent base has unit spacelike spectrum {0, 1, 1/4} with
multiplicities (1, 1, 2m-2) and the negatives for timelike vectors.

Nilpotency is certified in exact rational arithmetic: float coordinates
convert to Fractions without loss, and the Jacobi operator of xi/|q|^(1/2)
equals J_xi / q, which stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classifier, spectral
from .polynomial_geometry import PolyConnection, curvature, curvature_at
from .polynomials import Polynomial

__all__ = [
    "PolyMetric",
    "ExtensionReport",
    "deformed_extension",
    "modified_extension",
    "levi_civita_block",
    "check_extension_theorems",
]


class PolyMetric:
    """Block cotangent metric; `components` is the dense 2m x 2m table of
    polynomials in the 2m variables, `top_block` the m x m matrix B."""

    __slots__ = ("m", "dim", "components", "top_block")

    def __init__(self, m, top_block):
        m = int(m)
        n = 2 * m
        B = []
        for i in range(m):
            row = []
            for j in range(m):
                p = top_block[i][j]
                if not isinstance(p, Polynomial):
                    p = Polynomial.constant(p, n)
                if p.nvars != n:
                    raise ValueError("top block entries must live in %d variables" % n)
                row.append(p)
            B.append(tuple(row))
        for i in range(m):
            for j in range(i + 1, m):
                if B[i][j] != B[j][i]:
                    raise ValueError("top block is not symmetric at (%d, %d)" % (i, j))
        zero = Polynomial.zero(n)
        one = Polynomial.constant(1, n)
        comp = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(m):
            for j in range(m):
                comp[i][j] = B[i][j]
            comp[i][m + i] = one
            comp[m + i][i] = one
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "components", tuple(tuple(row) for row in comp))
        object.__setattr__(self, "top_block", tuple(B))

    def __setattr__(self, name, value):
        raise AttributeError("PolyMetric is immutable")

    def inverse(self):
        """Exact polynomial inverse [[0, Id], [Id, -B]]."""
        m, n = self.m, self.dim
        zero = Polynomial.zero(n)
        one = Polynomial.constant(1, n)
        inv = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(m):
            inv[i][m + i] = one
            inv[m + i][i] = one
            for j in range(m):
                inv[m + i][m + j] = -self.top_block[i][j]
        return tuple(tuple(row) for row in inv)

    def gram_at(self, point):
        """Numeric Gram matrix at a point of R^{2m}."""
        n = self.dim
        out = np.empty((n, n))
        for a in range(n):
            for b in range(n):
                out[a, b] = float(self.components[a][b](point))
        return out

    def gram_exact(self, point):
        point = [Fraction(v) for v in point]
        n = self.dim
        return [[self.components[a][b](point) for b in range(n)] for a in range(n)]


def _lift_connection_symbols(C):
    """Base symbols re-read in the 2m-variable ring."""
    n = 2 * C.dim
    return [
        [[C.gamma[i][j][k].embed(n) for k in range(C.dim)] for j in range(C.dim)]
        for i in range(C.dim)
    ]


def deformed_extension(C, Phi=None):
    """Metric with top block B_ij = -2 y_k G_ij^k + Phi_ij.

    Phi is an optional symmetric m x m table of polynomials in the base
    variables (numbers are accepted and read as constants).
    """
    m = C.dim
    n = 2 * m
    lifted = _lift_connection_symbols(C)
    B = [[Polynomial.zero(n) for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            total = Polynomial.zero(n)
            for k in range(m):
                total = total - 2 * Polynomial.variable(m + k, n) * lifted[i][j][k]
            B[i][j] = total
    if Phi is not None:
        for i in range(m):
            for j in range(m):
                p = Phi[i][j]
                if not isinstance(p, Polynomial):
                    p = Polynomial.constant(p, m)
                if p.nvars == m:
                    p = p.embed(n)
                if p.nvars != n:
                    raise ValueError("Phi entries must use the base variables")
                B[i][j] = B[i][j] + p
        for i in range(m):
            for j in range(i + 1, m):
                if B[i][j] != B[j][i]:
                    raise ValueError("Phi must be symmetric")
    return PolyMetric(m, B)


def modified_extension(C):
    """Metric with top block B_ij = y_i y_j - 2 y_k G_ij^k."""
    m = C.dim
    n = 2 * m
    base = deformed_extension(C)
    B = [list(row) for row in base.top_block]
    for i in range(m):
        for j in range(m):
            B[i][j] = B[i][j] + Polynomial.variable(m + i, n) * Polynomial.variable(m + j, n)
    return PolyMetric(m, B)


def levi_civita_block(metric):
    """Levi-Civita symbols of a block cotangent metric, exactly.

    G_ab^c = (1/2) ginv^cd (d_a g_bd + d_b g_ad - d_d g_ab); the result is
    verified to be metric-compatible as an exact polynomial identity.
    """
    n = metric.dim
    g = metric.components
    ginv = metric.inverse()
    half = Fraction(1, 2)
    dg = [[[g[a][b].diff(c) for c in range(n)] for b in range(n)] for a in range(n)]
    table = [[[None] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            for c in range(n):
                total = Polynomial.zero(n)
                for d in range(n):
                    if ginv[c][d].is_zero:
                        continue
                    total = total + ginv[c][d] * (dg[b][d][a] + dg[a][d][b] - dg[a][b][d])
                total = half * total
                table[a][b][c] = total
                table[b][a][c] = total
    conn = PolyConnection(n, table)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                defect = dg[b][c][a]
                for d in range(n):
                    defect = defect - conn.gamma[a][b][d] * g[d][c] - conn.gamma[a][c][d] * g[b][d]
                if not defect.is_zero:
                    raise RuntimeError("metric compatibility fails at (%d,%d,%d)" % (a, b, c))
    return conn


# -- exact Jacobi machinery ----------------------------------------------


def _jacobi_exact(R_exact, xi):
    """Fraction matrix of Y -> R(Y, xi) xi from an exact curvature table."""
    n = len(xi)
    J = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if not xi[j]:
                continue
            for k in range(n):
                if not xi[k]:
                    continue
                row = R_exact[i][j][k]
                coeff = xi[j] * xi[k]
                for l in range(n):
                    if row[l]:
                        J[l][i] += row[l] * coeff
    return J


def _mat_mul(A, B):
    n = len(A)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(n):
                if Bk[j]:
                    row[j] += a * Bk[j]
    return out


def _is_nilpotent_exact(J):
    """Check J^n = 0 by repeated squaring (n = matrix size)."""
    n = len(J)
    P = J
    power = 1
    while power < n:
        P = _mat_mul(P, P)
        power *= 2
        if all(not v for row in P for v in row):
            return True
    # power >= n, so for nilpotent J this power already vanishes.
    return all(not v for row in P for v in row)


# -- theorem checks -------------------------------------------------------


@dataclass(frozen=True)
class VectorRecord:
    vector: tuple
    character: str  # 'spacelike' | 'timelike'
    method: str  # 'exact' | 'numeric'
    max_abs_eigenvalue: float
    nilpotent: bool | None
    spectrum: spectral.Spectrum | None

    def to_json_dict(self):
        return {
            "vector": [float(v) for v in self.vector],
            "character": self.character,
            "method": self.method,
            "max_abs_eigenvalue": float(self.max_abs_eigenvalue),
            "nilpotent": self.nilpotent,
            "spectrum": None if self.spectrum is None else self.spectrum.to_json_dict(),
        }


@dataclass(frozen=True)
class ExtensionReport:
    kind: str
    point: tuple
    base_status: str
    records: tuple
    clauses: dict
    passed: bool
    seed: int
    tol: float

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "point": [float(v) for v in self.point],
            "base_status": self.base_status,
            "clauses": {k: bool(v) for k, v in sorted(self.clauses.items())},
            "passed": bool(self.passed),
            "seed": int(self.seed),
            "tol": float(self.tol),
            "vectors": [r.to_json_dict() for r in self.records],
        }


def default_point(m):
    """A fixed generic-looking rational point of R^{2m}."""
    return tuple(Fraction((-1) ** k * (2 * k + 3), 16) for k in range(2 * m))


def _sample_causal(gram, n_each, seed, max_tries=20000):
    n = gram.shape[0]
    rng = np.random.default_rng(seed)
    spacelike, timelike = [], []
    for _ in range(max_tries):
        if len(spacelike) >= n_each and len(timelike) >= n_each:
            break
        xi = rng.standard_normal(n)
        q = float(xi @ gram @ xi)
        if abs(q) <= 1e-6:
            continue
        if q > 0 and len(spacelike) < n_each:
            spacelike.append(xi)
        elif q < 0 and len(timelike) < n_each:
            timelike.append(xi)
    if len(spacelike) < n_each or len(timelike) < n_each:
        raise RuntimeError(
            "could not sample %d vectors of each causal character; "
            "metric signature looks wrong" % n_each
        )
    return spacelike, timelike


def _spectrum_matches(S, targets, tol):
    """targets: list of (value, multiplicity); matched within tol, no
    leftovers allowed."""
    items = list(S.items)
    for value, mult in targets:
        hit = None
        for idx, (v, mm) in enumerate(items):
            if abs(v - value) <= tol and mm == mult:
                hit = idx
                break
        if hit is None:
            return False
        items.pop(hit)
    return not items


def check_extension_theorems(
    C, Phi=None, which="deformed", point=None, n_vectors=10, seed=0, tol=1e-6
):
    """Evaluate the extension-metric spectral statements at one point.

    Builds the requested metric over the base connection, takes its exact
    Levi-Civita curvature, classifies the base at the matching base point,
    and tests the applicable clause on sampled unit spacelike and timelike
    vectors.  Returns an ExtensionReport whose `passed` field is the
    conjunction of the evaluated clauses.
    """
    if which not in ("deformed", "modified"):
        raise ValueError("which must be 'deformed' or 'modified'")
    if which == "modified" and Phi is not None:
        raise ValueError("the modified metric takes no Phi block")
    m = C.dim
    if point is None:
        point = default_point(m)
    point = tuple(Fraction(v) for v in point)
    if len(point) != 2 * m:
        raise ValueError("point must have %d components" % (2 * m))

    metric = deformed_extension(C, Phi) if which == "deformed" else modified_extension(C)
    lc = levi_civita_block(metric)
    R = curvature(lc)
    R_exact = R.evaluate_exact(point)

    float_point = [float(v) for v in point]
    base_point = float_point[:m]
    base_verdict = classifier.is_projective_affine_osserman(
        curvature_at(C, base_point), tol=tol
    )

    gram = metric.gram_at(float_point)
    spacelike, timelike = _sample_causal(gram, n_vectors, seed)
    gram_exact = metric.gram_exact(point)

    records = []
    spectra = {"spacelike": [], "timelike": []}
    for character, bucket in (("spacelike", spacelike), ("timelike", timelike)):
        for xi in bucket:
            xi_exact = [Fraction(v) for v in xi]
            q = Fraction(0)
            for a in range(2 * m):
                if not xi_exact[a]:
                    continue
                for b in range(2 * m):
                    if xi_exact[b]:
                        q += xi_exact[a] * gram_exact[a][b] * xi_exact[b]
            J_exact = _jacobi_exact(R_exact, xi_exact)
            inv_q = 1 / abs(q)
            J_unit = [[v * inv_q for v in row] for row in J_exact]
            if _is_nilpotent_exact(J_unit):
                records.append(
                    VectorRecord(tuple(map(float, xi)), character, "exact", 0.0, True, None)
                )
                spectra[character].append(None)
            else:
                J_num = np.array([[float(v) for v in row] for row in J_unit])
                S = spectral.spectrum(J_num, cluster_tol=tol)
                records.append(
                    VectorRecord(
                        tuple(map(float, xi)), character, "numeric",
                        float(S.radius()), False, S,
                    )
                )
                spectra[character].append(S)

    clauses = {}
    if which == "deformed":
        if base_verdict.status == classifier.AFFINE:
            clauses["nilpotent"] = all(r.nilpotent for r in records)
        elif base_verdict.status == classifier.PROJECTIVE:
            # The kernel of J_xi contains xi, so each spectrum carries its
            # own zero cluster; no quotient bookkeeping is needed.
            for character in ("spacelike", "timelike"):
                bucket = spectra[character]
                ok = all(S is not None for S in bucket)
                if ok:
                    try:
                        for i in range(len(bucket)):
                            for j in range(i + 1, len(bucket)):
                                if spectral.projective_match(bucket[i], bucket[j], tol) is None:
                                    ok = False
                    except ValueError:
                        ok = False
                clauses["projective_" + character] = ok
        else:
            clauses["base_osserman"] = False
    else:
        n = 2 * m
        space_targets = [(0.0, 1), (1.0, 1), (0.25, n - 2)]
        time_targets = [(0.0, 1), (-1.0, 1), (-0.25, n - 2)]
        ok_s = all(
            S is not None and _spectrum_matches(S, space_targets, tol)
            for S in spectra["spacelike"]
        )
        ok_t = all(
            S is not None and _spectrum_matches(S, time_targets, tol)
            for S in spectra["timelike"]
        )
        clauses["spacelike_spectrum"] = ok_s
        clauses["timelike_negative"] = ok_t

    passed = bool(clauses) and all(clauses.values())
    return ExtensionReport(
        which, tuple(float(v) for v in point), base_verdict.status,
        tuple(records), clauses, passed, seed, tol,
    )


