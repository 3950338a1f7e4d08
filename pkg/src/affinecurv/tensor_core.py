"""Dense rank-4 curvature tensors and their Jacobi operators.

A model lives on R^m with the standard basis.  The array convention is

    A(e_i, e_j) e_k = sum_l  entries[i, j, k, l] e_l,

and a well-formed model satisfies the two curvature identities

    A(X, Y)Z = -A(Y, X)Z,
    A(X, Y)Z + A(Y, Z)X + A(Z, X)Y = 0.

The Jacobi operator of a direction X is the matrix of Y -> A(Y, X)X; its
reduction to the quotient by the line through X is what classification
works with, since J_X X = 0 always.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CurvatureTensor",
    "SymmetryReport",
    "evaluate",
    "check_affine_symmetries",
    "jacobi",
    "reduced_jacobi",
    "perp_basis",
    "model_to_json_dict",
    "model_from_json_dict",
    "save_model",
    "load_model",
]


class CurvatureTensor:
    """Immutable dense rank-4 tensor on R^m.

    `notes` carries non-fatal flags set by constructors (for example an
    empty spectral slot at the minimum admissible dimension).
    """

    __slots__ = ("dim", "entries", "notes")

    def __init__(self, entries, notes=()):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 4 or len(set(arr.shape)) != 1:
            raise ValueError("entries must be an m x m x m x m array")
        arr.setflags(write=False)
        object.__setattr__(self, "dim", arr.shape[0])
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "notes", tuple(notes))

    def __setattr__(self, name, value):
        raise AttributeError("CurvatureTensor is immutable")

    def __repr__(self):
        nnz = int(np.count_nonzero(self.entries))
        return "CurvatureTensor(dim=%d, nonzero=%d)" % (self.dim, nnz)


@dataclass(frozen=True)
class SymmetryReport:
    antisymmetry_defect: float
    bianchi_defect: float
    tol: float
    passed: bool


def _check_vector(A, X, name="X"):
    X = np.asarray(X, dtype=float)
    if X.shape != (A.dim,):
        raise ValueError("%s has shape %r, expected (%d,)" % (name, X.shape, A.dim))
    return X


def evaluate(A, X, Y, Z):
    """Component vector of A(X, Y)Z."""
    X = _check_vector(A, X, "X")
    Y = _check_vector(A, Y, "Y")
    Z = _check_vector(A, Z, "Z")
    return np.einsum("ijkl,i,j,k->l", A.entries, X, Y, Z)


def check_affine_symmetries(A, tol=1e-10):
    """Max-abs defect of antisymmetry and of the first curvature identity."""
    e = A.entries
    anti = float(np.max(np.abs(e + e.transpose(1, 0, 2, 3)))) if A.dim else 0.0
    cyc = e + e.transpose(1, 2, 0, 3) + e.transpose(2, 0, 1, 3)
    bianchi = float(np.max(np.abs(cyc))) if A.dim else 0.0
    return SymmetryReport(anti, bianchi, tol, anti <= tol and bianchi <= tol)


def jacobi(A, X):
    """Matrix of Y -> A(Y, X)X; column i is the image of e_i.

    Homogeneous of degree two in X, and always kills X itself.  X may be
    zero, in which case the result is the zero matrix.
    """
    X = _check_vector(A, X)
    return np.einsum("ijkl,j,k->li", A.entries, X, X)


def perp_basis(X):
    """Orthonormal basis of the hyperplane orthogonal to X, as columns.

    Deterministic: Gram-Schmidt is seeded with the standard basis minus
    the axis carrying the largest |X^i| component (lowest index on ties),
    so repeated calls agree bit for bit.
    """
    X = np.asarray(X, dtype=float)
    m = X.shape[0]
    nrm = np.linalg.norm(X)
    if nrm == 0.0:
        raise ValueError("cannot build a complement of the zero vector")
    drop = int(np.argmax(np.abs(X)))
    basis = [X / nrm]
    for j in range(m):
        if j == drop:
            continue
        v = np.zeros(m)
        v[j] = 1.0
        for u in basis:
            v = v - (u @ v) * u
        basis.append(v / np.linalg.norm(v))
    return np.column_stack(basis[1:])


def reduced_jacobi(A, X):
    """Jacobi operator on the quotient by the line through X.

    Concretely Q^T J_X Q for Q = perp_basis(X); because J_X X = 0 the full
    spectrum is the reduced spectrum plus one extra zero.
    """
    X = _check_vector(A, X)
    if np.linalg.norm(X) == 0.0:
        raise ValueError("reduced Jacobi operator needs a nonzero direction")
    Q = perp_basis(X)
    return Q.T @ jacobi(A, X) @ Q


# -- JSON model files -----------------------------------------------------


def model_to_json_dict(A):
    """{"dim": m, "entries": [[i, j, k, l, value], ...]} with 0-based
    indices, zeros omitted, entries sorted lexicographically."""
    entries = []
    nz = np.argwhere(A.entries != 0.0)
    for i, j, k, l in sorted(map(tuple, nz)):
        entries.append([int(i), int(j), int(k), int(l), float(A.entries[i, j, k, l])])
    return {"dim": int(A.dim), "entries": entries}


def model_from_json_dict(data):
    try:
        dim = int(data["dim"])
        rows = data["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError("model JSON needs 'dim' and 'entries'") from exc
    if dim <= 0:
        raise ValueError("dim must be positive")
    arr = np.zeros((dim, dim, dim, dim))
    seen = set()
    for row in rows:
        if len(row) != 5:
            raise ValueError("entry row %r is not [i, j, k, l, value]" % (row,))
        i, j, k, l = (int(v) for v in row[:4])
        for idx in (i, j, k, l):
            if not 0 <= idx < dim:
                raise ValueError("index %d out of range for dim=%d" % (idx, dim))
        if (i, j, k, l) in seen:
            raise ValueError("duplicate entry at (%d, %d, %d, %d)" % (i, j, k, l))
        seen.add((i, j, k, l))
        arr[i, j, k, l] = float(row[4])
    return CurvatureTensor(arr)


def save_model(A, path):
    with open(path, "w") as fh:
        json.dump(model_to_json_dict(A), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_model(path):
    with open(path) as fh:
        return model_from_json_dict(json.load(fh))
