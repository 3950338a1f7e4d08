"""Constructions of curvature models with prescribed reduced Jacobi spectra.

Two base operators generate everything here:

    constant_curvature(m):     A(X, Y)Z = <Y,Z>X - <X,Z>Y
    complex_structure_term(J): A(X, Y)Z = (1/3)(<JY,Z>X - <JX,Z>Y - 2<JX,Y>Z)

For a unit direction X the first has Jacobi operator "identity on the
complement of X", the second maps JX to X and kills everything orthogonal
to JX.  Composing with orthogonal (anti)complex structures and taking
linear combinations produces models whose Jacobi operator acts, on the
quotient by X, with any admissible eigenvalue pattern; `realize` maps a
case label plus eigenvalue data to the matching combination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor_core import CurvatureTensor

__all__ = [
    "ComplexStructure",
    "QuaternionStructure",
    "StructureSpec",
    "constant_curvature",
    "complex_structure_term",
    "standard_complex_structure",
    "standard_quaternion_structure",
    "compose_endomorphism",
    "complex_model",
    "quaternion_model",
    "realize",
    "CASE_LABELS",
    "case_constraints",
]

_STRUCT_TOL = 1e-10


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ComplexStructure:
    """Orthogonal anti-involution: J^2 = -Id and J^T J = Id."""

    matrix: np.ndarray

    def __post_init__(self):
        J = _frozen(self.matrix)
        if J.ndim != 2 or J.shape[0] != J.shape[1]:
            raise ValueError("J must be square")
        m = J.shape[0]
        if m % 2:
            raise ValueError("a complex structure needs even dimension, got %d" % m)
        if np.max(np.abs(J @ J + np.eye(m))) > _STRUCT_TOL:
            raise ValueError("J^2 = -Id fails")
        if np.max(np.abs(J.T @ J - np.eye(m))) > _STRUCT_TOL:
            raise ValueError("J is not orthogonal")
        object.__setattr__(self, "matrix", J)

    @property
    def dim(self):
        return self.matrix.shape[0]


@dataclass(frozen=True)
class QuaternionStructure:
    """Orthogonal J1, J2, J3 with the quaternion relations J1 J2 = J3."""

    j1: ComplexStructure
    j2: ComplexStructure
    j3: ComplexStructure

    def __post_init__(self):
        m = self.j1.dim
        if self.j2.dim != m or self.j3.dim != m:
            raise ValueError("component dimensions differ")
        if m % 4:
            raise ValueError("a quaternion structure needs dimension divisible by 4")
        a, b, c = self.j1.matrix, self.j2.matrix, self.j3.matrix
        if np.max(np.abs(a @ b - c)) > _STRUCT_TOL:
            raise ValueError("J1 J2 = J3 fails")
        for p, q in ((a, b), (b, c), (c, a)):
            if np.max(np.abs(p @ q + q @ p)) > _STRUCT_TOL:
                raise ValueError("components do not anticommute")

    @property
    def dim(self):
        return self.j1.dim


def standard_complex_structure(m):
    """Block rotation on consecutive coordinate pairs: e1 -> e2, e2 -> -e1."""
    if m % 2:
        raise ValueError("m must be even, got %d" % m)
    J = np.zeros((m, m))
    for k in range(0, m, 2):
        J[k + 1, k] = 1.0
        J[k, k + 1] = -1.0
    return ComplexStructure(J)


def standard_quaternion_structure(m):
    """Left multiplication by i, j, k on consecutive coordinate 4-blocks."""
    if m % 4:
        raise ValueError("m must be divisible by 4, got %d" % m)
    J1 = np.zeros((m, m))
    J2 = np.zeros((m, m))
    J3 = np.zeros((m, m))
    for b in range(0, m, 4):
        # basis of the block: 1, i, j, k
        J1[b + 1, b] = 1.0
        J1[b, b + 1] = -1.0
        J1[b + 3, b + 2] = 1.0
        J1[b + 2, b + 3] = -1.0
        J2[b + 2, b] = 1.0
        J2[b, b + 2] = -1.0
        J2[b + 3, b + 1] = -1.0
        J2[b + 1, b + 3] = 1.0
        J3[b + 3, b] = 1.0
        J3[b, b + 3] = -1.0
        J3[b + 2, b + 1] = 1.0
        J3[b + 1, b + 2] = -1.0
    return QuaternionStructure(
        ComplexStructure(J1), ComplexStructure(J2), ComplexStructure(J3)
    )


def constant_curvature(m):
    """A(X, Y)Z = <Y,Z>X - <X,Z>Y, the constant-sectional-curvature model."""
    if m < 2:
        raise ValueError("need m >= 2")
    eye = np.eye(m)
    entries = np.einsum("jk,il->ijkl", eye, eye) - np.einsum("ik,jl->ijkl", eye, eye)
    return CurvatureTensor(entries)


def complex_structure_term(J):
    """A(X, Y)Z = (1/3)(<JY,Z>X - <JX,Z>Y - 2<JX,Y>Z) for a complex structure J."""
    Jm = J.matrix
    m = J.dim
    eye = np.eye(m)
    # <J e_j, e_k> = Jm[k, j]
    entries = (
        np.einsum("kj,il->ijkl", Jm, eye)
        - np.einsum("ki,jl->ijkl", Jm, eye)
        - 2.0 * np.einsum("ji,kl->ijkl", Jm, eye)
    ) / 3.0
    return CurvatureTensor(entries)


def compose_endomorphism(Xi, A):
    """Tensor of (X, Y, Z) -> Xi(A(X, Y)Z): Xi acts on the output slot."""
    Xi = np.asarray(Xi, dtype=float)
    if Xi.shape != (A.dim, A.dim):
        raise ValueError("endomorphism shape %r does not match dim %d" % (Xi.shape, A.dim))
    return CurvatureTensor(np.einsum("lp,ijkp->ijkl", Xi, A.entries))


def complex_model(J, axis_value, perp_value, perp_skew):
    """Model whose Jacobi operator at any unit X acts as

        X            -> 0
        JX           -> axis_value * JX
        Y in {X,JX}^perp -> perp_value * Y + perp_skew * JY.

    Eigenvalues on the quotient by X: axis_value once and the pair
    perp_value +/- i*perp_skew, each with multiplicity (m - 2)/2 (a single
    real eigenvalue of multiplicity m - 2 when perp_skew = 0).
    """
    Jm = J.matrix
    a0t = constant_curvature(J.dim).entries
    ajt = complex_structure_term(J).entries
    j_aj = np.einsum("lp,ijkp->ijkl", Jm, ajt)
    j_a0 = np.einsum("lp,ijkp->ijkl", Jm, a0t)
    jj_aj = np.einsum("lp,ijkp->ijkl", Jm, j_aj)
    entries = (
        perp_value * a0t
        + perp_skew * (j_a0 - jj_aj)
        + (axis_value - perp_value) * j_aj
    )
    return CurvatureTensor(entries)


def quaternion_model(Q, j1_value, j2_value, j3_value, perp_value, perp_skew, plane_skew):
    """Model whose Jacobi operator at any unit X acts as

        X    -> 0
        J1 X -> j1_value * J1 X
        J2 X -> j2_value * Y + plane_skew * J1 Y   (Y = J2 X)
        J3 X -> j3_value * Y + plane_skew * J1 Y   (Y = J3 X)
        Y in {X, J1X, J2X, J3X}^perp -> perp_value * Y + perp_skew * J1 Y.

    On the quotient this yields j1_value, the conjugate-closed pair from
    the (J2 X, J3 X) plane with skew part plane_skew, and the pair
    perp_value +/- i*perp_skew with multiplicity (m - 4)/2 each.  At m = 4
    the complement is empty and the perp slot is absent; the returned
    tensor is flagged with a note in that case.
    """
    m = Q.dim
    J1, J2, J3 = Q.j1.matrix, Q.j2.matrix, Q.j3.matrix
    a0t = constant_curvature(m).entries

    def term(Jm):
        return np.einsum("lp,ijkp->ijkl", Jm, complex_structure_term(ComplexStructure(Jm)).entries)

    t1, t2, t3 = term(J1), term(J2), term(J3)
    j1_a0 = np.einsum("lp,ijkp->ijkl", J1, a0t)
    j1j1_a1 = np.einsum("lp,ijkp->ijkl", J1, t1)
    j1_t23 = np.einsum("lp,ijkp->ijkl", J1, t2 + t3)
    a1 = perp_skew
    a2 = plane_skew - perp_skew
    entries = (
        perp_value * a0t
        + (j1_value - perp_value) * t1
        + (j2_value - perp_value) * t2
        + (j3_value - perp_value) * t3
        + a1 * (j1_a0 - j1j1_a1)
        + a2 * j1_t23
    )
    notes = ()
    if m == 4:
        notes = ("empty-complement: the perp eigenvalue slot has multiplicity 0",)
    return CurvatureTensor(entries, notes=notes)


# -- case table and realization -------------------------------------------

CASE_LABELS = (
    "1",
    "2-a", "2-b", "2-c",
    "3-a", "3-b-i", "3-b-ii", "3-b-iii", "3-c-i", "3-c-ii", "3-d",
    "3-e-i", "3-e-ii", "3-e-iii", "3-f-i", "3-f-ii", "3-g", "3-h",
)

# label -> (dimension class, #lambda, #nu, real slot mults, pair slot mults,
#           zero eigenvalue permitted).  Mults are in declaration order:
# lambda_1.. first, then nu_1.. .
_CASES = {
    "1":       ("odd",  1, 0, lambda m: (m - 1,),          lambda m: (),             False),
    "2-a":     ("2mod4", 1, 0, lambda m: (m - 1,),         lambda m: (),             False),
    "2-b":     ("2mod4", 2, 0, lambda m: (1, m - 2),       lambda m: (),             True),
    "2-c":     ("2mod4", 1, 1, lambda m: (1,),             lambda m: ((m - 2) // 2,), True),
    "3-a":     ("0mod4", 1, 0, lambda m: (m - 1,),         lambda m: (),             False),
    "3-b-i":   ("0mod4", 2, 0, lambda m: (1, m - 2),       lambda m: (),             True),
    "3-b-ii":  ("0mod4", 2, 0, lambda m: (2, m - 3),       lambda m: (),             True),
    "3-b-iii": ("0mod4", 2, 0, lambda m: (3, m - 4),       lambda m: (),             True),
    "3-c-i":   ("0mod4", 3, 0, lambda m: (1, 1, m - 3),    lambda m: (),             True),
    "3-c-ii":  ("0mod4", 3, 0, lambda m: (1, 2, m - 4),    lambda m: (),             True),
    "3-d":     ("0mod4", 4, 0, lambda m: (1, 1, 1, m - 4), lambda m: (),             True),
    "3-e-i":   ("0mod4", 1, 1, lambda m: (1,),             lambda m: ((m - 2) // 2,), True),
    "3-e-ii":  ("0mod4", 1, 1, lambda m: (3,),             lambda m: ((m - 4) // 2,), True),
    "3-e-iii": ("0mod4", 1, 1, lambda m: (m - 3,),         lambda m: (1,),           True),
    "3-f-i":   ("0mod4", 2, 1, lambda m: (1, 2),           lambda m: ((m - 4) // 2,), True),
    "3-f-ii":  ("0mod4", 2, 1, lambda m: (1, m - 4),       lambda m: (1,),           True),
    "3-g":     ("0mod4", 3, 1, lambda m: (1, 1, 1),        lambda m: ((m - 4) // 2,), True),
    "3-h":     ("0mod4", 1, 2, lambda m: (1,),             lambda m: (1, (m - 4) // 2), True),
}


def case_constraints(case, m):
    """(real multiplicities, pair multiplicities) for a case at dimension m."""
    info = _CASES[case]
    return info[3](m), info[4](m)


@dataclass(frozen=True)
class StructureSpec:
    """A case label with the eigenvalue data that realizes it.

    lambdas are the real eigenvalues, nus the upper-half-plane members of
    the conjugate pairs, both in the slot order of the case table.
    """

    case: str
    lambdas: tuple = ()
    nus: tuple = ()
    m: int | None = None

    def __post_init__(self):
        if self.case not in _CASES:
            raise ValueError("unknown case label %r" % (self.case,))
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))
        nus = tuple(complex(v) for v in self.nus)
        for nu in nus:
            if nu.imag <= 0:
                raise ValueError("complex eigenvalue %r must have positive imaginary part" % (nu,))
        object.__setattr__(self, "nus", nus)

    def to_json_dict(self):
        out = {
            "case": self.case,
            "lambda": [float(v) for v in self.lambdas],
            "nu": [[float(v.real), float(v.imag)] for v in self.nus],
        }
        if self.m is not None:
            out["m"] = int(self.m)
        return out

    @classmethod
    def from_json_dict(cls, data):
        return cls(
            case=data["case"],
            lambdas=tuple(data.get("lambda", ())),
            nus=tuple(complex(re, im) for re, im in data.get("nu", ())),
            m=data.get("m"),
        )


def _dimension_ok(dim_class, m):
    if dim_class == "odd":
        return m % 2 == 1
    if dim_class == "2mod4":
        return m % 4 == 2
    return m % 4 == 0


def _validate(spec, m):
    dim_class, n_lam, n_nu, real_mults, pair_mults, zero_ok = _CASES[spec.case]
    if spec.m is not None and spec.m != m:
        raise ValueError("spec carries m=%d but realize was given m=%d" % (spec.m, m))
    if m < 2:
        raise ValueError("need m >= 2")
    if not _dimension_ok(dim_class, m):
        raise ValueError(
            "case %s needs dimension class %s; m=%d does not qualify"
            % (spec.case, dim_class, m)
        )
    if len(spec.lambdas) != n_lam or len(spec.nus) != n_nu:
        raise ValueError(
            "case %s takes %d real and %d complex eigenvalues, got %d and %d"
            % (spec.case, n_lam, n_nu, len(spec.lambdas), len(spec.nus))
        )
    for mults, what in ((real_mults(m), "real"), (pair_mults(m), "complex")):
        for slot, mult in enumerate(mults):
            if mult < 1:
                raise ValueError(
                    "case %s at m=%d gives %s slot %d multiplicity %d; "
                    "the slot must be nonempty" % (spec.case, m, what, slot + 1, mult)
                )
    values = [complex(v) for v in spec.lambdas] + list(spec.nus)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] == values[j]:
                raise ValueError(
                    "case %s requires distinct eigenvalues; got a repeat %r"
                    % (spec.case, values[i])
                )
    if not zero_ok and spec.lambdas[0] == 0.0:
        raise ValueError("case %s needs a nonzero eigenvalue" % spec.case)


def realize(spec, m):
    """Curvature model on R^m whose reduced Jacobi spectrum matches `spec`
    at every direction.

    Validates the dimension class of the case, positivity of every implied
    multiplicity, and pairwise distinctness of the eigenvalue data.
    """
    _validate(spec, m)
    case = spec.case
    lams = spec.lambdas
    nus = spec.nus

    if case in ("1", "2-a", "3-a"):
        base = constant_curvature(m)
        return CurvatureTensor(lams[0] * base.entries)

    if case in ("2-b", "3-b-i"):
        J = standard_complex_structure(m)
        return complex_model(J, lams[0], lams[1], 0.0)
    if case == "2-c":
        J = standard_complex_structure(m)
        return complex_model(J, lams[0], nus[0].real, nus[0].imag)

    Q = standard_quaternion_structure(m)
    if case == "3-b-ii":
        args = (lams[0], lams[0], lams[1], lams[1], 0.0, 0.0)
    elif case == "3-b-iii":
        args = (lams[0], lams[0], lams[0], lams[1], 0.0, 0.0)
    elif case == "3-c-i":
        args = (lams[0], lams[1], lams[2], lams[2], 0.0, 0.0)
    elif case == "3-c-ii":
        args = (lams[0], lams[1], lams[1], lams[2], 0.0, 0.0)
    elif case == "3-d":
        args = (lams[0], lams[1], lams[2], lams[3], 0.0, 0.0)
    elif case == "3-e-i":
        nu = nus[0]
        args = (lams[0], nu.real, nu.real, nu.real, nu.imag, nu.imag)
    elif case == "3-e-ii":
        nu = nus[0]
        args = (lams[0], lams[0], lams[0], nu.real, nu.imag, 0.0)
    elif case == "3-e-iii":
        nu = nus[0]
        args = (lams[0], nu.real, nu.real, lams[0], 0.0, nu.imag)
    elif case == "3-f-i":
        nu = nus[0]
        args = (lams[0], lams[1], lams[1], nu.real, nu.imag, 0.0)
    elif case == "3-f-ii":
        nu = nus[0]
        args = (lams[0], nu.real, nu.real, lams[1], 0.0, nu.imag)
    elif case == "3-g":
        nu = nus[0]
        args = (lams[0], lams[1], lams[2], nu.real, nu.imag, 0.0)
    elif case == "3-h":
        nu1, nu2 = nus
        args = (lams[0], nu1.real, nu1.real, nu2.real, nu2.imag, nu1.imag)
    else:  # pragma: no cover
        raise AssertionError(case)
    return quaternion_model(Q, *args)
