"""Spectra of Jacobi operators: clustering, Jordan structure, projective
comparison.

Eigenvalues of the (generally non-symmetric) Jacobi matrices are computed
with a dense general-purpose solver and then clustered, because the models
of interest carry exactly repeated eigenvalues that floating arithmetic
scatters.  Conjugate pairs are restored exactly: a real matrix is the only
input we accept, so the multiset must be closed under conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigensolverError",
    "Spectrum",
    "JordanProfile",
    "MuVector",
    "spectrum",
    "jordan_profile",
    "mu_vector",
    "projectively_equal",
    "projective_match",
    "with_zero",
    "is_zero_spectrum",
]

DEFAULT_CLUSTER_TOL = 1e-8


class EigensolverError(RuntimeError):
    """Eigen/singular value computation failed or produced nonsense."""


@dataclass(frozen=True)
class Spectrum:
    """Clustered eigenvalue multiset.

    `items` is a tuple of (value, multiplicity) sorted by (re, im); values
    with |Im| at most the effective tolerance are snapped to the real
    axis, and non-real values come in exact conjugate pairs.
    """

    items: tuple
    cluster_tol: float

    @property
    def total_multiplicity(self):
        return sum(m for _, m in self.items)

    def radius(self):
        return max((abs(v) for v, _ in self.items), default=0.0)

    def nonzero_items(self):
        return [(v, m) for v, m in self.items if abs(v) > self.cluster_tol]

    def to_json_dict(self):
        return {
            "eigenvalues": [
                {"re": float(v.real), "im": float(v.imag), "mult": int(m)}
                for v, m in self.items
            ],
            "tol": float(self.cluster_tol),
        }

    @classmethod
    def from_json_dict(cls, data):
        items = tuple(
            (complex(e["re"], e["im"]), int(e["mult"])) for e in data["eigenvalues"]
        )
        return cls(items, float(data["tol"]))


def _sorted_items(items):
    return tuple(sorted(items, key=lambda t: (t[0].real, t[0].imag)))


def spectrum(M, cluster_tol=None):
    """Clustered spectrum of a real square matrix.

    The effective tolerance is relative to the spectral radius (absolute
    when the radius is below one): distinct reported values are pairwise
    farther apart than it.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square, got shape %r" % (M.shape,))
    n = M.shape[0]
    if n == 0:
        raise ValueError("empty matrix has no spectrum")
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError("eigenvalue iteration failed: %s" % exc) from exc
    if not np.all(np.isfinite(vals.view(float))):
        raise EigensolverError("non-finite eigenvalues")
    base = DEFAULT_CLUSTER_TOL if cluster_tol is None else float(cluster_tol)
    radius = float(np.max(np.abs(vals)))
    eff = base * max(1.0, radius)

    # Single-linkage merge; the target spectra have exactly repeated
    # eigenvalues plus solver jitter, so chaining is not a concern.
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= eff:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(vals[i])
    items = []
    for members in groups.values():
        centroid = complex(np.mean(members))
        if abs(centroid.imag) <= eff:
            centroid = complex(centroid.real, 0.0)
        items.append((centroid, len(members)))

    # Conjugation closure: symmetrize each (im > 0, im < 0) pair exactly.
    reals = [(v, m) for v, m in items if v.imag == 0.0]
    upper = sorted(((v, m) for v, m in items if v.imag > 0.0), key=lambda t: (t[0].real, t[0].imag))
    lower = list((v, m) for v, m in items if v.imag < 0.0)
    closed = list(reals)
    for v, m in upper:
        best = None
        for idx, (w, mw) in enumerate(lower):
            d = abs(np.conj(v) - w)
            if best is None or d < best[0]:
                best = (d, idx, w, mw)
        if best is None or best[0] > 2 * eff or best[3] != m:
            raise EigensolverError("spectrum of a real matrix is not conjugation-closed")
        lower.pop(best[1])
        sym = (v + np.conj(best[2])) / 2.0
        closed.append((complex(sym), m))
        closed.append((complex(np.conj(sym)), m))
    if lower:
        raise EigensolverError("spectrum of a real matrix is not conjugation-closed")
    return Spectrum(_sorted_items(closed), eff)


def is_zero_spectrum(S):
    """True when every eigenvalue sits within the cluster tolerance of 0."""
    return all(abs(v) <= S.cluster_tol for v, _ in S.items)


def with_zero(S):
    """Adjoin one extra zero eigenvalue (the quotient direction).

    If a cluster already sits at zero the centroid is re-averaged with the
    exact zero, otherwise a fresh (0, 1) item is inserted.
    """
    items = list(S.items)
    for idx, (v, m) in enumerate(items):
        if abs(v) <= S.cluster_tol:
            items[idx] = ((v * m) / (m + 1), m + 1)
            return Spectrum(_sorted_items(items), S.cluster_tol)
    items.append((0j, 1))
    return Spectrum(_sorted_items(items), S.cluster_tol)


@dataclass(frozen=True)
class JordanProfile:
    eigenvalue: complex
    block_sizes: tuple  # descending
    multiplicity: int


def _numerical_rank(M, cutoff):
    """Count of singular values at or above an absolute cutoff."""
    try:
        s = np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError("SVD failed: %s" % exc) from exc
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s >= cutoff))


def jordan_profile(M, eigenvalue, tol=1e-8):
    """Jordan block sizes at one eigenvalue, from the rank sequence of
    powers of (M - eigenvalue I).

    Ranks are numerical: singular values below tol times the largest are
    treated as zero.  This stays stable near defective eigenvalues where
    the eigenvalues themselves scatter like the square root of machine
    precision.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    n = M.shape[0]
    lam = complex(eigenvalue)
    N = M.astype(complex) - lam * np.eye(n)
    # The cutoff for N^k scales as ||N||^k: a power that vanishes in exact
    # arithmetic only carries roundoff of that size, and judging each power
    # by its own largest singular value would keep such noise at full rank.
    scale = float(np.linalg.norm(N, 2))
    ranks = [n]
    P = np.eye(n, dtype=complex)
    cutoff = 1.0
    for _ in range(n):
        P = P @ N
        cutoff *= scale
        r = _numerical_rank(P, tol * cutoff) if scale > 0.0 else 0
        ranks.append(r)
        if r == ranks[-2]:
            break
    mult = n - ranks[-1]
    if mult == 0:
        raise ValueError("%r is not an eigenvalue within tol=%g" % (eigenvalue, tol))
    # ranks[k] stabilizes at n - mult; pad so differences below are valid.
    ranks.append(ranks[-1])
    sizes = []
    for k in range(1, n + 1):
        if k >= len(ranks) - 1:
            break
        ge_k = ranks[k - 1] - ranks[k]
        ge_k1 = ranks[k] - ranks[k + 1]
        sizes.extend([k] * (ge_k - ge_k1))
    sizes.sort(reverse=True)
    if sum(sizes) != mult:
        raise EigensolverError("inconsistent rank sequence %r" % (ranks,))
    return JordanProfile(lam, tuple(sizes), mult)


@dataclass(frozen=True)
class MuVector:
    """Multiplicity vector in canonical order.

    Zero slot first, then real eigenvalues by descending multiplicity
    (ties by ascending value), then conjugate pairs, each contributing two
    equal slots, by descending multiplicity (ties by ascending real
    part).  A spectrum that is {0} alone is flagged nilpotent.
    """

    entries: tuple
    kinds: tuple  # 'zero' | 'real' | 'complex', aligned with entries
    nilpotent: bool = False

    def to_json_dict(self):
        return {
            "entries": [int(e) for e in self.entries],
            "kinds": list(self.kinds),
            "nilpotent": bool(self.nilpotent),
        }


def mu_vector(S):
    """Canonical multiplicity vector of a full Jacobi spectrum (0 in S)."""
    zero = None
    for v, m in S.items:
        if abs(v) <= S.cluster_tol:
            zero = (v, m)
            break
    if zero is None:
        raise ValueError("spectrum has no zero eigenvalue; not a full Jacobi spectrum")
    if len(S.items) == 1:
        return MuVector((zero[1],), ("zero",), nilpotent=True)
    reals = sorted(
        ((v.real, m) for v, m in S.items if v.imag == 0.0 and (v, m) != zero),
        key=lambda t: (-t[1], t[0]),
    )
    pairs = sorted(
        ((v, m) for v, m in S.items if v.imag > 0.0),
        key=lambda t: (-t[1], t[0].real),
    )
    entries = [zero[1]]
    kinds = ["zero"]
    for _, m in reals:
        entries.append(m)
        kinds.append("real")
    for _, m in pairs:
        entries.extend([m, m])
        kinds.extend(["complex", "complex"])
    return MuVector(tuple(entries), tuple(kinds))


def _match_with_scale(S1, S2, s, tol):
    """Max matching error of S1 against s*S2, or None if no full match."""
    if len(S1.items) != len(S2.items):
        return None
    scale = max(1.0, S1.radius())
    eff = tol * scale
    used = [False] * len(S2.items)
    worst = 0.0
    for v1, m1 in S1.items:
        best = None
        for idx, (v2, m2) in enumerate(S2.items):
            if used[idx] or m1 != m2:
                continue
            d = abs(v1 - s * v2)
            if d <= eff and (best is None or d < best[0]):
                best = (d, idx)
        if best is None:
            return None
        used[best[1]] = True
        worst = max(worst, best[0])
    return worst


def _has_zero(S):
    return any(abs(v) <= S.cluster_tol for v, _ in S.items)


def projective_match(S1, S2, tol=1e-8):
    """(scale, residual) with S1 = scale * S2, or None.

    The candidate scale is the ratio of the largest-modulus nonzero
    eigenvalues; it is then verified against the whole multiset, with
    multiplicities.  Scales are positive by construction.
    """
    for S in (S1, S2):
        if not _has_zero(S):
            raise ValueError("projective comparison expects full Jacobi spectra (0 present)")
        if is_zero_spectrum(S):
            raise ValueError("spectrum is {0}: nilpotent Jacobi operator, no projective scale")
    s = max(abs(v) for v, _ in S1.nonzero_items()) / max(
        abs(v) for v, _ in S2.nonzero_items()
    )
    residual = _match_with_scale(S1, S2, s, tol)
    if residual is None:
        return None
    return s, residual


def projectively_equal(S1, S2, tol=1e-8):
    """Positive scale s with S1 = s * S2 as multisets, else None."""
    match = projective_match(S1, S2, tol)
    return None if match is None else match[0]
