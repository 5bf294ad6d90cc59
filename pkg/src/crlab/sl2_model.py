"""SL(2,R) acting on the 3-sphere with one open orbit and one circle orbit.

``psi(m) = m . (0, 1)`` identifies SL(2,R) with ``S^3 minus {y = 0}``.  The
orbits of the right-invariant field ``T mu`` project to ``C`` through
``(x, y) -> x / y^2``; a left-invariant deformation of the CR structure with
parameter ``qJ`` induces a metric on that plane whose Gaussian curvature is
bounded exactly when ``qJ = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np
from scipy.linalg import expm

from .errors import PoleOfChart

Vec = Tuple[complex, complex]

# basis of sl(2,R) as integer matrices
T_MAT = np.array([[0, 1], [-1, 0]], dtype=np.int64)
U_MAT = np.array([[1, 0], [0, -1]], dtype=np.int64)
V_MAT = np.array([[0, 1], [1, 0]], dtype=np.int64)
BASIS = {"T": T_MAT, "U": U_MAT, "V": V_MAT}

# [A, B] = coeff * C for the matrix basis
BRACKETS = (("T", "U", -2, "V"), ("T", "V", 2, "U"), ("U", "V", 2, "T"))


@dataclass(frozen=True)
class SL2Matrix:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-12:
            raise ValueError(f"determinant {det!r} != 1")

    @classmethod
    def from_array(cls, m) -> "SL2Matrix":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])


@dataclass(frozen=True)
class SpherePoint:
    x: complex
    y: complex

    def __post_init__(self):
        n = abs(self.x) ** 2 + abs(self.y) ** 2
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"point is off the unit sphere: {n!r}")


@dataclass(frozen=True)
class DeformParam:
    qJ: float

    def __post_init__(self):
        if not self.qJ > 0:
            raise ValueError("qJ must be positive")


@dataclass(frozen=True)
class BasePoint:
    u: float
    v: float

    @property
    def A(self) -> float:
        return 1.0 + 4.0 * (self.u * self.u + self.v * self.v)


class Generator(str, enum.Enum):
    T = "T"
    U = "U"
    V = "V"


class LeftField(str, enum.Enum):
    MU_U = "muU"
    MU_V = "muV"


def psi_raw(a, b, c, d) -> Vec:
    """``psi`` without the determinant check; accepts arrays."""
    den = (c - b) + 1j * (a + d)
    return 1j * ((a - d) + 1j * (b + c)) / den, 2j / den


def psi(m: SL2Matrix) -> SpherePoint:
    x, y = psi_raw(m.a, m.b, m.c, m.d)
    return SpherePoint(complex(x), complex(y))


def _generator(which: str, x, y) -> Vec:
    if which == "T":
        return -2j * x, -1j * y
    if which == "U":
        return 1 - x * x, -x * y
    if which == "V":
        return 1j * (1 + x * x), 1j * x * y
    raise ValueError(f"unknown generator {which!r}")


def generator_field(which, p: SpherePoint) -> Vec:
    """Holomorphic field on C^2 generating the action of ``which`` in {T, U, V}."""
    return _generator(Generator(which).value, p.x, p.y)


def tangency_residual(p: SpherePoint, v: Vec) -> float:
    """``Re(conj(x) dx + conj(y) dy)``; zero iff ``v`` is tangent to the sphere at ``p``."""
    return (p.x.conjugate() * v[0] + p.y.conjugate() * v[1]).real


def matrix_bracket(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def field_bracket_fd(X: Callable, Y: Callable, x: complex, y: complex, h: float = 1e-4) -> Vec:
    """Lie bracket ``[X, Y] = DY.X - DX.Y`` of holomorphic fields by central differences.

    For holomorphic fields the complex derivative along a complex direction
    ``w`` is ``(F(p + h w) - F(p - h w)) / 2h``.
    """
    def directional(F, w):
        fp = F(x + h * w[0], y + h * w[1])
        fm = F(x - h * w[0], y - h * w[1])
        return ((fp[0] - fm[0]) / (2 * h), (fp[1] - fm[1]) / (2 * h))

    Xp, Yp = X(x, y), Y(x, y)
    dYX = directional(Y, Xp)
    dXY = directional(X, Yp)
    return dYX[0] - dXY[0], dYX[1] - dXY[1]


def bracket_check(n_points: int = 20, h: float = 1e-4, seed: int = 0) -> Dict[str, object]:
    """Check the bracket relations on matrices (exact) and on the fields (finite differences).

    A left action sends the matrix bracket to minus the vector-field bracket,
    so the fields satisfy ``[X_A, X_B] = -coeff * X_C`` whenever
    ``[A, B] = coeff * C``.  The returned ``field_max_error`` is the largest
    deviation from that relation over random sphere points.
    """
    matrix_ok = {}
    for a, b, coeff, c in BRACKETS:
        matrix_ok[f"[{a},{b}]={coeff}{c}"] = bool(
            np.array_equal(matrix_bracket(BASIS[a], BASIS[b]), coeff * BASIS[c]))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        x, y = random_sphere_point(rng)
        for a, b, coeff, c in BRACKETS:
            X = lambda u, w, _a=a: _generator(_a, u, w)
            Y = lambda u, w, _b=b: _generator(_b, u, w)
            br = field_bracket_fd(X, Y, x, y, h)
            target = _generator(c, x, y)
            err = max(abs(br[0] + coeff * target[0]), abs(br[1] + coeff * target[1]))
            worst = max(worst, err)
    return {"matrix": matrix_ok, "matrix_exact": all(matrix_ok.values()),
            "field_max_error": worst, "h": h, "n_points": n_points}


def left_invariant_field(which, p: SpherePoint) -> Vec:
    """Image under ``psi`` of the left-invariant fields equal to ``U`` or ``V`` at the identity."""
    if p.y == 0:
        raise PoleOfChart("left-invariant fields are undefined on y = 0")
    which = LeftField(which)
    y2 = p.y * p.y
    vec = (y2, -y2 * (p.x / p.y).conjugate())
    if which is LeftField.MU_U:
        return vec
    return 1j * vec[0], 1j * vec[1]


def pushforward_fd(m: SL2Matrix, which: str, h: float = 1e-5) -> Vec:
    """``d/dt psi(m exp(t X)) at t = 0`` by central differences, ``X`` in {T, U, V}."""
    X = BASIS[which].astype(float)
    M = m.as_array()
    plus = M @ expm(h * X)
    minus = M @ expm(-h * X)
    xp, yp = psi_raw(*plus.ravel())
    xm, ym = psi_raw(*minus.ravel())
    return complex((xp - xm) / (2 * h)), complex((yp - ym) / (2 * h))


def alpha_sq(p: SpherePoint) -> float:
    y2 = abs(p.y) ** 2
    if y2 == 0:
        raise PoleOfChart("alpha^2 is undefined on y = 0")
    return (2.0 - y2) / y2


def project(p: SpherePoint) -> complex:
    """Orbit-space coordinate ``z = x / y^2``."""
    if p.y == 0:
        raise PoleOfChart("the projection is undefined on y = 0")
    return p.x / (p.y * p.y)


def base_curvature(d: DeformParam, z: BasePoint) -> float:
    """Closed-form Gaussian curvature of the orbit space for the structure ``J_qJ``."""
    q2 = d.qJ * d.qJ
    A = z.A
    sA = math.sqrt(A)
    return q2 * 12.0 / sA + (1.0 / q2 - q2) * (6.0 * sA - 48.0 * z.v * z.v / sA)


def base_curvature_grid(qJ: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    q2 = qJ * qJ
    sA = np.sqrt(1.0 + 4.0 * (u * u + v * v))
    return q2 * 12.0 / sA + (1.0 / q2 - q2) * (6.0 * sA - 48.0 * v * v / sA)


def curvature_fd_oracle(d: DeformParam, z: BasePoint, h: float = 1e-3) -> float:
    """Gaussian curvature of ``E du^2 + G dv^2`` by central differences.

    ``X = qJ f d/du`` and ``Y = f/qJ d/dv`` are orthonormal with
    ``f = (1 + 4|z|^2)^(3/4)``, so ``E = 1/(qJ f)^2`` and ``G = qJ^2/f^2``.
    Uses ``K = -1/(2 sqrt(EG)) [d/du(G_u/sqrt(EG)) + d/dv(E_v/sqrt(EG))]`` with
    fourth-order central differences for every derivative.
    """
    if not 1e-6 < h < 1e-2:
        raise ValueError("h must lie in (1e-6, 1e-2)")
    q = d.qJ

    def f(u, v):
        return (1.0 + 4.0 * (u * u + v * v)) ** 0.75

    def E(u, v):
        return 1.0 / (q * f(u, v)) ** 2

    def G(u, v):
        return q * q / f(u, v) ** 2

    def W(u, v):
        return math.sqrt(E(u, v) * G(u, v))

    def diff(F, t):
        # fourth-order central difference
        return (F(t - 2 * h) - 8 * F(t - h) + 8 * F(t + h) - F(t + 2 * h)) / (12 * h)

    def Gu_over_W(u, v):
        return diff(lambda t: G(t, v), u) / W(u, v)

    def Ev_over_W(u, v):
        return diff(lambda t: E(u, t), v) / W(u, v)

    u0, v0 = z.u, z.v
    d_u = diff(lambda t: Gu_over_W(t, v0), u0)
    d_v = diff(lambda t: Ev_over_W(u0, t), v0)
    return -(d_u + d_v) / (2.0 * W(u0, v0))


def boundedness_probe(d: DeformParam, R: float, n: int = 201) -> Tuple[float, BasePoint]:
    """Largest ``|K|`` on an ``n x n`` grid over ``[-R, R]^2``.

    Odd ``n`` puts the origin on the grid.
    """
    if not R > 0:
        raise ValueError("R must be positive")
    g = np.linspace(-R, R, n)
    u, v = np.meshgrid(g, g, indexing="ij")
    K = np.abs(base_curvature_grid(d.qJ, u, v))
    i, j = np.unravel_index(int(np.argmax(K)), K.shape)
    return float(K[i, j]), BasePoint(float(g[i]), float(g[j]))


def random_sl2(rng: np.random.Generator, scale: float = 2.0) -> SL2Matrix:
    """Random determinant-one matrix: ``rotation @ diag(e^s, e^-s) @ shear``."""
    th = rng.uniform(0, 2 * math.pi)
    sc = rng.uniform(-scale, scale)
    sh = rng.uniform(-scale, scale)
    rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    dia = np.diag([math.exp(sc), math.exp(-sc)])
    she = np.array([[1.0, sh], [0.0, 1.0]])
    m = rot @ dia @ she
    # renormalise the round-off in the determinant
    m /= math.sqrt(np.linalg.det(m))
    return SL2Matrix.from_array(m)


def random_sphere_point(rng: np.random.Generator) -> Tuple[complex, complex]:
    w = rng.normal(size=4)
    w /= np.linalg.norm(w)
    return complex(w[0], w[1]), complex(w[2], w[3])
