"""Affine connections with exact polynomial Christoffel symbols.

Curvature, its covariant derivative, and the Ricci decomposition are
computed symbolically over the rationals, so the structural identities
(antisymmetry, the cyclic identity, vanishing loci) can be asserted as
exact zero polynomials.  Numerical work (Jacobi spectra, geodesics)
happens after evaluating at a point.

Index conventions, with d_i the coordinate fields:

    R(d_i, d_j) d_k = sum_l R[i][j][k][l] d_l,
    R_ijk^l = d_i G_jk^l - d_j G_ik^l + G_in^l G_jk^n - G_jn^l G_ik^n,

where G_ij^k is the symbol gamma[i][j][k].  The covariant derivative
table is indexed nabla[i][j][k][n][l] for (grad_{d_n} R)(d_i, d_j) d_k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classifier
from .polynomials import Polynomial, parse_polynomial, polynomial_to_string
from .tensor_core import CurvatureTensor

__all__ = [
    "PolyConnection",
    "PolyCurvature",
    "SurfaceVerdict",
    "GeodesicResult",
    "curvature",
    "curvature_at",
    "nabla_R",
    "ricci_split",
    "surface_projective_osserman",
    "curvature_homogeneous_connection",
    "plane_wave_connection",
    "flat_connection",
    "geodesic_integrate",
    "connection_to_json_dict",
    "connection_from_json_dict",
    "save_connection",
    "load_connection",
]


class PolyConnection:
    """Torsion-free connection: gamma[i][j][k] is the d_k coefficient of
    the covariant derivative of d_j along d_i, a Polynomial in as many
    variables as the dimension."""

    __slots__ = ("dim", "gamma")

    def __init__(self, dim, gamma):
        dim = int(dim)
        if dim < 1:
            raise ValueError("need dim >= 1")
        table = []
        for i in range(dim):
            row = []
            for j in range(dim):
                col = []
                for k in range(dim):
                    p = gamma[i][j][k]
                    if not isinstance(p, Polynomial):
                        p = Polynomial.constant(p, dim)
                    if p.nvars != dim:
                        raise ValueError(
                            "symbol (%d,%d,%d) has %d variables, expected %d"
                            % (i, j, k, p.nvars, dim)
                        )
                    col.append(p)
                row.append(tuple(col))
            table.append(tuple(row))
        for i in range(dim):
            for j in range(i + 1, dim):
                for k in range(dim):
                    if table[i][j][k] != table[j][i][k]:
                        raise ValueError(
                            "torsion: symbol (%d,%d,%d) differs from (%d,%d,%d)"
                            % (i, j, k, j, i, k)
                        )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "gamma", tuple(table))

    def __setattr__(self, name, value):
        raise AttributeError("PolyConnection is immutable")

    def christoffel(self, i, j, k):
        return self.gamma[i][j][k]

    def gamma_at(self, point):
        """Numeric symbol array gamma[i, j, k] at a point."""
        m = self.dim
        out = np.empty((m, m, m))
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    out[i, j, k] = float(self.gamma[i][j][k](point))
        return out


def _empty_table(dim):
    zero = Polynomial.zero(dim)
    return [[[zero for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]


def connection_from_symbols(dim, symbols):
    """Build from a sparse {(i, j, k): Polynomial|rational} map; the (i, j)
    symmetric closure is applied automatically."""
    table = _empty_table(dim)
    for (i, j, k), value in symbols.items():
        if not isinstance(value, Polynomial):
            value = Polynomial.constant(value, dim)
        table[i][j][k] = value
        table[j][i][k] = value
    return PolyConnection(dim, table)


@dataclass(frozen=True)
class PolyCurvature:
    """Rank-4 polynomial curvature table, optionally with its covariant
    derivative attached (see nabla_R)."""

    dim: int
    riemann: tuple
    nabla: tuple | None = None

    def entry(self, i, j, k, l):
        return self.riemann[i][j][k][l]

    def evaluate_at(self, point):
        m = self.dim
        arr = np.empty((m, m, m, m))
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    for l in range(m):
                        arr[i, j, k, l] = float(self.riemann[i][j][k][l](point))
        return CurvatureTensor(arr)

    def evaluate_exact(self, point):
        """Nested Fraction table at an exact rational point."""
        point = [Fraction(v) for v in point]
        m = self.dim
        return [
            [
                [
                    [self.riemann[i][j][k][l](point) for l in range(m)]
                    for k in range(m)
                ]
                for j in range(m)
            ]
            for i in range(m)
        ]


def curvature(C, with_nabla=False):
    """Exact polynomial curvature of a torsion-free connection.

    Antisymmetry in the first two slots and the cyclic identity are
    verified as exact zero polynomials before returning.
    """
    m = C.dim
    g = C.gamma
    R = [[[[None] * m for _ in range(m)] for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    if i == j:
                        R[i][j][k][l] = Polynomial.zero(m)
                        continue
                    if i > j:
                        R[i][j][k][l] = -R[j][i][k][l]
                        continue
                    term = g[j][k][l].diff(i) - g[i][k][l].diff(j)
                    for n in range(m):
                        term = term + g[i][n][l] * g[j][k][n] - g[j][n][l] * g[i][k][n]
                    R[i][j][k][l] = term
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    cyc = R[i][j][k][l] + R[j][k][i][l] + R[k][i][j][l]
                    if not cyc.is_zero:
                        raise RuntimeError(
                            "cyclic identity violated at (%d,%d,%d,%d)" % (i, j, k, l)
                        )
    riemann = tuple(tuple(tuple(tuple(col) for col in row) for row in plane) for plane in R)
    result = PolyCurvature(m, riemann)
    if with_nabla:
        result = PolyCurvature(m, riemann, _covariant_derivative(C, riemann))
    return result


def _covariant_derivative(C, R):
    m = C.dim
    g = C.gamma
    NR = []
    for i in range(m):
        plane_i = []
        for j in range(m):
            plane_j = []
            for k in range(m):
                plane_k = []
                for n in range(m):
                    comps = []
                    for l in range(m):
                        term = R[i][j][k][l].diff(n)
                        for p in range(m):
                            term = term + g[n][p][l] * R[i][j][k][p]
                            term = term - g[n][i][p] * R[p][j][k][l]
                            term = term - g[n][j][p] * R[i][p][k][l]
                            term = term - g[n][k][p] * R[i][j][p][l]
                        comps.append(term)
                    plane_k.append(tuple(comps))
                plane_j.append(tuple(plane_k))
            plane_i.append(tuple(plane_j))
        NR.append(tuple(plane_i))
    return tuple(NR)


def nabla_R(C):
    """Rank-5 table nabla[i][j][k][n][l] of the covariant derivative of the
    curvature: the l-component of (grad_{d_n} R)(d_i, d_j) d_k."""
    return curvature(C, with_nabla=True).nabla


def curvature_at(C, point):
    """Curvature tensor evaluated numerically at a point."""
    return curvature(C).evaluate_at(point)


def ricci_split(C):
    """(symmetric, antisymmetric) parts of the Ricci tensor
    rho_jk = sum_l R_ljk^l, each an m x m polynomial table."""
    R = curvature(C).riemann
    m = C.dim
    rho = [[Polynomial.zero(m) for _ in range(m)] for _ in range(m)]
    for j in range(m):
        for k in range(m):
            total = Polynomial.zero(m)
            for l in range(m):
                total = total + R[l][j][k][l]
            rho[j][k] = total
    half = Fraction(1, 2)
    sym = tuple(
        tuple(half * (rho[j][k] + rho[k][j]) for k in range(m)) for j in range(m)
    )
    alt = tuple(
        tuple(half * (rho[j][k] - rho[k][j]) for k in range(m)) for j in range(m)
    )
    return sym, alt


@dataclass(frozen=True)
class SurfaceVerdict:
    """Definiteness of the symmetric Ricci part at a point versus the
    sampled spectral verdict for the curvature there."""

    definite: bool
    ricci_symmetric: tuple  # 2x2 floats
    sampled_status: str
    agrees: bool

    def to_json_dict(self):
        return {
            "definite": self.definite,
            "ricci_symmetric": [[float(v) for v in row] for row in self.ricci_symmetric],
            "sampled_status": self.sampled_status,
            "agrees": self.agrees,
        }


def surface_projective_osserman(C, point, n_samples=64, seed=0, tol=1e-8):
    """Surface criterion: a 2-dimensional connection is projective affine
    Osserman exactly when the symmetric Ricci part is definite.

    Definiteness is decided exactly (rational determinant), then
    cross-checked against the sampled-spectrum verdict at the same point.
    When the form is degenerate but nonzero, its exact null direction is
    added to the probe set: the spectrum collapses only on that line,
    which random directions almost surely miss.
    """
    if C.dim != 2:
        raise ValueError("the Ricci criterion is for surfaces (dim 2)")
    sym, _ = ricci_split(C)
    pt = [Fraction(v) for v in point]
    vals = [[sym[j][k](pt) for k in range(2)] for j in range(2)]
    det = vals[0][0] * vals[1][1] - vals[0][1] * vals[1][0]
    definite = det > 0
    extra = ()
    if det == 0:
        a, b, c = vals[0][0], vals[0][1], vals[1][1]
        if a != 0:
            extra = ((float(-b), float(a)),)
        elif c != 0:
            # det == 0 with a == 0 forces b == 0, so e1 is null
            extra = ((1.0, 0.0),)
    verdict = classifier.is_projective_affine_osserman(
        curvature_at(C, [float(v) for v in pt]), n_samples=n_samples, seed=seed,
        tol=tol, extra_directions=extra,
    )
    agrees = definite == (verdict.status == classifier.PROJECTIVE)
    ricci = tuple(tuple(float(v) for v in row) for row in vals)
    return SurfaceVerdict(definite, ricci, verdict.status, agrees)


# -- built-in connections -------------------------------------------------


def flat_connection(m):
    return PolyConnection(m, _empty_table(m))


def curvature_homogeneous_connection(m, eps=0):
    """Family on R^m with constant curvature entries.

    Nonzero symbols, writing d for the last index m:

        G_dd^d = 2,  G_id^i = G_di^i = 1,  G_ii^d = 1   (i < d),
        G_11^1 = eps*(x1 + x2),  G_22^2 = -eps*(x1 + x2).

    At eps = 0 the curvature is the constant-sectional-curvature model.
    The eps perturbation needs m >= 3: at m = 2 the perturbed symbols
    would collide with the base ones, so eps must then be zero.
    """
    eps = Fraction(eps)
    if m < 2:
        raise ValueError("need m >= 2")
    if m == 2 and eps != 0:
        raise ValueError("the eps-perturbed family needs m >= 3")
    last = m - 1
    symbols = {(last, last, last): Polynomial.constant(2, m)}
    for i in range(last):
        symbols[(i, last, i)] = Polynomial.constant(1, m)
        symbols[(i, i, last)] = Polynomial.constant(1, m)
    if eps:
        linear = Polynomial.variable(0, m) + Polynomial.variable(1, m)
        symbols[(0, 0, 0)] = eps * linear
        symbols[(1, 1, 1)] = -eps * linear
    return connection_from_symbols(m, symbols)


def plane_wave_connection():
    """Three-dimensional wave-type connection with the single symbol
    G_11^3 = x2; every Jacobi operator of its curvature squares to zero."""
    return connection_from_symbols(3, {(0, 0, 2): Polynomial.variable(1, 3)})


# -- geodesics ------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicResult:
    times: tuple
    positions: tuple
    velocities: tuple
    blew_up: bool
    blow_up_time: float | None

    @property
    def final_position(self):
        return np.asarray(self.positions[-1])

    @property
    def final_velocity(self):
        return np.asarray(self.velocities[-1])

    def to_json_dict(self):
        return {
            "blew_up": self.blew_up,
            "blow_up_time": None if self.blow_up_time is None else float(self.blow_up_time),
            "t_final": float(self.times[-1]),
            "x_final": [float(v) for v in self.positions[-1]],
            "v_final": [float(v) for v in self.velocities[-1]],
            "steps": len(self.times) - 1,
        }


_BLOWUP_SPEED = 1e8


def geodesic_integrate(C, x0, v0, t_max, step=1e-3):
    """Classical fourth-order Runge-Kutta for x'' + G(x)(x', x') = 0.

    Near a blow-up the step is halved until it stalls; the geodesic is
    reported as blowing up when the speed passes 1e8 or no finite step
    can be taken, and the recorded time is then accurate to the scale of
    the last accepted step.
    """
    m = C.dim
    x = np.asarray(x0, dtype=float).copy()
    v = np.asarray(v0, dtype=float).copy()
    if x.shape != (m,) or v.shape != (m,):
        raise ValueError("state must have %d components" % m)
    if t_max <= 0 or step <= 0:
        raise ValueError("t_max and step must be positive")

    compiled = [[[list(C.gamma[i][j][k].terms()) for k in range(m)] for j in range(m)] for i in range(m)]

    def gamma_at(pos):
        out = np.zeros((m, m, m))
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    total = 0.0
                    for exps, coeff in compiled[i][j][k]:
                        term = float(coeff)
                        for p, e in zip(pos, exps):
                            if e:
                                term *= p**e
                        total += term
                    out[i, j, k] = total
        return out

    def accel(pos, vel):
        G = gamma_at(pos)
        return -np.einsum("ijk,i,j->k", G, vel, vel)

    def rk4(pos, vel, h):
        k1x, k1v = vel, accel(pos, vel)
        k2x, k2v = vel + 0.5 * h * k1v, accel(pos + 0.5 * h * k1x, vel + 0.5 * h * k1v)
        k3x, k3v = vel + 0.5 * h * k2v, accel(pos + 0.5 * h * k2x, vel + 0.5 * h * k2v)
        k4x, k4v = vel + h * k3v, accel(pos + h * k3x, vel + h * k3v)
        new_pos = pos + (h / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        new_vel = vel + (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v)
        return new_pos, new_vel

    times = [0.0]
    positions = [x.copy()]
    velocities = [v.copy()]
    t = 0.0
    blew_up = False
    blow_time = None
    min_step = step * 2.0**-45
    while t < t_max - 1e-15:
        h = min(step, t_max - t)
        while True:
            nx, nv = rk4(x, v, h)
            if np.all(np.isfinite(nx)) and np.all(np.isfinite(nv)):
                break
            h *= 0.5
            if h < min_step:
                blew_up = True
                blow_time = t
                break
        if blew_up:
            break
        x, v = nx, nv
        t += h
        times.append(t)
        positions.append(x.copy())
        velocities.append(v.copy())
        if np.linalg.norm(v) >= _BLOWUP_SPEED:
            blew_up = True
            blow_time = t
            break
    return GeodesicResult(
        tuple(times),
        tuple(tuple(p) for p in positions),
        tuple(tuple(w) for w in velocities),
        blew_up,
        blow_time,
    )


# -- JSON connection files ------------------------------------------------


def connection_to_json_dict(C):
    """{"dim": m, "gamma": {"i,j,k": "<polynomial>"}} with 0-based indices;
    only the i <= j representative of each symmetric pair is stored."""
    out = {}
    for i in range(C.dim):
        for j in range(i, C.dim):
            for k in range(C.dim):
                p = C.gamma[i][j][k]
                if p.is_zero:
                    continue
                out["%d,%d,%d" % (i, j, k)] = polynomial_to_string(p)
    return {"dim": C.dim, "gamma": out}


def connection_from_json_dict(data):
    try:
        dim = int(data["dim"])
        raw = data["gamma"]
    except (KeyError, TypeError) as exc:
        raise ValueError("connection JSON needs 'dim' and 'gamma'") from exc
    table = _empty_table(dim)
    filled = {}
    for key, text in raw.items():
        try:
            i, j, k = (int(p) for p in key.split(","))
        except ValueError as exc:
            raise ValueError("bad symbol key %r; expected 'i,j,k'" % key) from exc
        for idx in (i, j, k):
            if not 0 <= idx < dim:
                raise ValueError("index %d out of range in key %r" % (idx, key))
        poly = parse_polynomial(text, dim)
        if (i, j, k) in filled and filled[(i, j, k)] != poly:
            raise ValueError("conflicting symbols for (%d,%d,%d)" % (i, j, k))
        filled[(i, j, k)] = poly
        if (j, i, k) in filled and filled[(j, i, k)] != poly:
            raise ValueError(
                "asymmetric symbols for (%d,%d,%d) vs (%d,%d,%d)" % (i, j, k, j, i, k)
            )
        table[i][j][k] = poly
        table[j][i][k] = poly
    return PolyConnection(dim, table)


def save_connection(C, path):
    with open(path, "w") as fh:
        json.dump(connection_to_json_dict(C), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_connection(path):
    with open(path) as fh:
        return connection_from_json_dict(json.load(fh))
