"""Rotationally symmetric cone metrics ``dt^2 + r(t)^2 dtheta^2`` on the 2-sphere.

The curvature ``k`` of the metric is a Killing potential: ``k' = l r``, and
Gaussian curvature gives ``r'' = -k r``.  Together these force
``k'' = (s^2 - k^2)/2`` for some ``s > 0``.  A meridian runs from the pole
``P1`` (``k = s1``) to ``P2`` (``k = s2``), and the cone angle at a pole is
``2 pi |r'|`` there.  Requiring angles ``2 pi/q1`` and ``2 pi/q2`` fixes ``s``,
``s1`` and ``s2`` uniquely for ``q1 > q2``; equal angles have no solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from ._rk4 import bisect_substep, rk4_step
from .errors import EventNotFound, NoRootFound, NoSolution
from .phase_plane import PhaseParams, period_quadrature

Number = Union[int, float]


@dataclass(frozen=True)
class ConeData:
    """Cone parameters: pole ``P1`` has angle ``2 pi/q1``, ``P2`` has ``2 pi/q2``.

    ``l`` is the homothety scale.  ``q1 == q2`` is representable (it is the
    case the construction rejects with :class:`NoSolution`).
    """

    q1: Number
    q2: Number
    l: float = 1.0
    allow_real_cones: bool = False

    def __post_init__(self):
        if not self.l > 0:
            raise ValueError(f"l must be positive, got {self.l!r}")
        if not (self.q1 > 0 and self.q2 > 0):
            raise ValueError("cone orders must be positive")
        if not self.allow_real_cones:
            if int(self.q1) != self.q1 or int(self.q2) != self.q2:
                raise ValueError("cone orders must be integers unless allow_real_cones")
            q1, q2 = int(self.q1), int(self.q2)
            object.__setattr__(self, "q1", q1)
            object.__setattr__(self, "q2", q2)
            if q2 < 1:
                raise ValueError("cone orders must be >= 1")
            if q1 != q2 and math.gcd(q1, q2) != 1:
                raise ValueError(f"cone orders ({q1}, {q2}) must be coprime")
        if self.q1 < self.q2:
            raise ValueError("label the poles so that q1 >= q2")


@dataclass
class MetricProfile:
    cone: ConeData
    s: float
    s1: float
    s2: float
    tau: float
    t: np.ndarray
    k: np.ndarray
    r: np.ndarray
    r_prime_poles: Tuple[float, float]
    # the same grid in extended precision; finite-difference residuals use it
    # so that round-off (~eps/h^2) stays below the discretisation error
    k_ext: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    r_ext: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def c(self) -> float:
        return 0.5 * self.s * self.s

    @property
    def r_prime(self) -> np.ndarray:
        """``r' = k''/l = (c - k^2/2)/l``, exact on the grid."""
        return (self.c - 0.5 * self.k ** 2) / self.cone.l

    @property
    def step(self) -> float:
        return self.tau / (len(self.t) - 1)

    def extended(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(t, k, r)`` in extended precision when available, else the float grid."""
        if self.k_ext is None:
            return self.t, self.k, self.r
        n = len(self.k_ext) - 1
        t = np.arange(n + 1, dtype=np.longdouble) * (np.longdouble(self.tau) / n)
        return t, self.k_ext, self.r_ext


@dataclass(frozen=True)
class ConstructionReport:
    cone_angles: Tuple[float, float]
    gauss_bonnet: float
    area: float
    curvature_residual: float
    killing_residual: float


def solve_s(cone: ConeData) -> float:
    """Closed-form value of ``s`` for the cone data.

    ``s = sqrt(l ((2/q2)^3 + (2/q1)^3) / (3 ((2/q2)^2 - (2/q1)^2)))``.
    """
    if cone.q1 == cone.q2:
        raise NoSolution(f"equal cone orders q1 = q2 = {cone.q1}: the pole conditions "
                         "force s1*s2 = s^2 and s1^2*s2^2 = s^4 - 4 l^2/q^2")
    a = 2.0 / cone.q1
    b = 2.0 / cone.q2
    return math.sqrt(cone.l * (b ** 3 + a ** 3) / (3.0 * (b * b - a * a)))


def endpoints(cone: ConeData, s: float) -> Tuple[float, float]:
    """Curvature values ``(s1, s2)`` at the two poles."""
    l = cone.l
    s1_sq = s * s - 2.0 * l / cone.q1
    s2_sq = s * s + 2.0 * l / cone.q2
    if s1_sq < 0:
        # tiny negatives are round-off at s1 = 0 (e.g. the (2, 1) teardrop)
        if s1_sq < -1e-12 * s * s:
            raise NoSolution(f"s^2 - 2l/q1 = {s1_sq!r} < 0")
        s1_sq = 0.0
    s2 = math.sqrt(s2_sq)
    # s1^2 + s1 s2 + s2^2 = 3 s^2 fixes the sign of s1
    signed = (3.0 * s * s - s1_sq - s2_sq) / s2
    s1 = math.copysign(math.sqrt(s1_sq), signed) if s1_sq > 0 else 0.0
    if not (-s < s1 < s and s < s2 < 2.0 * s):
        raise NoSolution(f"crossings ({s1!r}, {s2!r}) do not surround the centre s = {s!r}")
    return s1, s2


def construct_profile(cone: ConeData, n_grid: int = 2048, tol: float = 1e-10) -> MetricProfile:
    """Integrate the meridian from ``P1`` to ``P2``.

    ``k'' = (s^2 - k^2)/2`` is integrated with RK4 from ``k = s1, k' = 0``
    until ``k'`` next vanishes; that time, refined by bisection to ``tol``, is
    the meridian length ``tau``.  The equation is then re-integrated on an
    ``n_grid``-interval uniform grid over ``[0, tau]`` and ``r = k'/l``.
    """
    if n_grid < 4:
        raise ValueError("n_grid must be at least 4")
    s = solve_s(cone)
    s1, s2 = endpoints(cone, s)
    l = cone.l
    c = 0.5 * s * s

    def f(k, kp):
        return kp, c - 0.5 * k * k

    # locate the event with the step the final grid will roughly have
    h = (math.pi / math.sqrt(s)) / n_grid
    horizon = 10.0 * math.pi / math.sqrt(s)
    k, kp, t = s1, 0.0, 0.0
    tau = None
    while t < horizon:
        k_new, kp_new = rk4_step(f, k, kp, h)
        if kp > 0 and kp_new <= 0:
            tau = t + bisect_substep(f, k, kp, h, lambda _k, _kp: _kp, tol)
            break
        k, kp, t = k_new, kp_new, t + h
    if tau is None:
        raise EventNotFound(f"k' did not return to zero within t = {horizon!r}")

    # re-integrate on the output grid in extended precision
    ext = np.longdouble
    hg = ext(tau) / n_grid
    c_ext = ext(c)

    def f_ext(k, kp):
        return kp, c_ext - 0.5 * k * k

    ks = np.empty(n_grid + 1, dtype=ext)
    kps = np.empty(n_grid + 1, dtype=ext)
    k, kp = ext(s1), ext(0.0)
    ks[0], kps[0] = k, kp
    for i in range(n_grid):
        k, kp = rk4_step(f_ext, k, kp, hg)
        ks[i + 1], kps[i + 1] = k, kp
    r_ext = kps / ext(l)
    r_ext[0] = 0.0
    r_ext[-1] = 0.0
    r = r_ext.astype(float)
    k_ext, ks = ks, ks.astype(float)
    t_grid = np.linspace(0.0, tau, n_grid + 1)
    poles = ((c - 0.5 * ks[0] ** 2) / l, (c - 0.5 * ks[-1] ** 2) / l)
    return MetricProfile(cone, s, s1, s2, tau, t_grid, ks, r, poles, k_ext, r_ext)


def cone_angles(profile: MetricProfile) -> Tuple[float, float]:
    a, b = profile.r_prime_poles
    return 2.0 * math.pi * abs(a), 2.0 * math.pi * abs(b)


def gauss_bonnet(profile: MetricProfile) -> float:
    """``int_0^tau k r dt``; equals ``1/q1 + 1/q2`` for an exact profile."""
    return float(simpson(profile.k * profile.r, x=profile.t))


def area(profile: MetricProfile) -> float:
    """``2 pi int_0^tau r dt``; equals ``2 pi (s2 - s1)/l`` for an exact profile."""
    return 2.0 * math.pi * float(simpson(profile.r, x=profile.t))


def _second_derivative(v: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central second difference at indices ``2 .. n-3``."""
    return (-v[:-4] + 16.0 * v[1:-3] - 30.0 * v[2:-2] + 16.0 * v[3:-1] - v[4:]) / (12.0 * h * h)


def _first_derivative(v: np.ndarray, h: float) -> np.ndarray:
    return (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)


def gaussian_curvature_residual(t: np.ndarray, k: np.ndarray, r: np.ndarray, margin: float) -> float:
    """``max |-r''/r - k|`` over ``[t0 + margin, t_end - margin]`` on a uniform grid."""
    h = t[1] - t[0]
    rpp = _second_derivative(r, h)
    inner = slice(2, len(t) - 2)
    tt, kk, rr = t[inner], k[inner], r[inner]
    mask = (tt >= t[0] + margin) & (tt <= t[-1] - margin)
    if not mask.any():
        raise ValueError("margin leaves no grid points")
    return float(np.max(np.abs(-rpp[mask] / rr[mask] - kk[mask])))


def curvature_residual(profile: MetricProfile, margin: float = None) -> float:
    """Disagreement between ``k`` and the curvature ``-r''/r`` of the profile.

    The default margin is ``tau/20``; the poles are excluded because ``r``
    vanishes there.
    """
    if margin is None:
        margin = profile.tau / 20.0
    if not 0 < margin < profile.tau / 4:
        raise ValueError("margin must lie in (0, tau/4)")
    return gaussian_curvature_residual(*profile.extended(), margin)


def killing_residual(profile: MetricProfile) -> float:
    """``max |k' - l r|`` with ``k'`` from fourth-order differences of the ``k`` grid."""
    t, k, r = profile.extended()
    dk = _first_derivative(k, t[1] - t[0])
    return float(np.max(np.abs(dk - profile.cone.l * r[2:-2])))


def construction_report(profile: MetricProfile) -> ConstructionReport:
    return ConstructionReport(
        cone_angles=cone_angles(profile),
        gauss_bonnet=gauss_bonnet(profile),
        area=area(profile),
        curvature_residual=curvature_residual(profile),
        killing_residual=killing_residual(profile),
    )


def period_cross_check(profile: MetricProfile) -> float:
    """Relative gap between the event-located ``tau`` and the quadrature half period."""
    p = PhaseParams(profile.c)
    F0 = profile.s1 ** 3 / 3.0 - 2.0 * p.c * profile.s1
    tau_q = period_quadrature(p, F0)
    return abs(profile.tau - tau_q) / tau_q


def _pole_system_residual(s: float, cone: ConeData) -> float:
    s1_sq = s * s - 2.0 * cone.l / cone.q1
    s2_sq = s * s + 2.0 * cone.l / cone.q2
    s1s2 = 3.0 * s * s - s1_sq - s2_sq
    return s1s2 * s1s2 - s1_sq * s2_sq


def uniqueness_cross_check(cone: ConeData) -> float:
    """``|s_root - solve_s(cone)|`` where ``s_root`` solves the pole system by Brent's method.

    The pole conditions ``s^2 - s1^2 = 2l/q1``, ``s2^2 - s^2 = 2l/q2`` and
    ``s1^2 + s1 s2 + s2^2 = 3 s^2`` are reduced to a single residual in ``s``
    (squaring out the product ``s1 s2``) and bracketed on
    ``[sqrt(2l/q1), 10 sqrt(l)]``, the lower end nudged down by a relative
    ``1e-9`` so a root sitting on it (``s1 = 0``) stays bracketed.
    """
    if cone.q1 == cone.q2:
        raise NoSolution("equal cone orders")
    lo = math.sqrt(2.0 * cone.l / cone.q1) * (1.0 - 1e-9)
    hi = 10.0 * math.sqrt(cone.l)
    g_lo, g_hi = _pole_system_residual(lo, cone), _pole_system_residual(hi, cone)
    if g_lo * g_hi > 0:
        raise NoRootFound(f"pole residual does not change sign on [{lo!r}, {hi!r}]")
    root = brentq(_pole_system_residual, lo, hi, args=(cone,), xtol=1e-15, rtol=8.9e-16, maxiter=200)
    return abs(root - solve_s(cone))


@dataclass(frozen=True)
class SmoothCertificate:
    """Outcome of the smooth-sphere (``q1 = q2 = 1``) impossibility scan.

    ``min_residual`` is ``min |s1^2 s2^2 - (s1 s2)^2|`` over the grid, computed
    in exact rational arithmetic on the float grid values; ``expected`` is
    ``4 l^2``.  ``float_min_residual`` is the same quantity in floating point.
    """

    l: float
    n: int
    min_residual: float
    expected: float
    float_min_residual: float

    @property
    def certified(self) -> bool:
        return self.min_residual > 0


def smooth_impossibility(l: float, s_grid: int = 100) -> SmoothCertificate:
    """Scan ``s`` on a log grid and measure how far the smooth pole system is from consistent.

    With both angles ``2 pi`` the pole conditions give ``s1^2 = s^2 - 2l`` and
    ``s2^2 = s^2 + 2l`` while the crossing identity forces ``s1 s2 = s^2``.
    Their incompatibility ``s1^2 s2^2 - (s1 s2)^2 = -4 l^2`` holds for every s.
    """
    if not l > 0:
        raise ValueError("l must be positive")
    grid = np.geomspace(2e-3 * math.sqrt(l), 1e3 * math.sqrt(l), s_grid)
    lq = Fraction(l)
    exact = []
    approx = []
    for s in grid:
        sq = Fraction(float(s)) ** 2
        s1_sq, s2_sq = sq - 2 * lq, sq + 2 * lq
        s1s2 = 3 * sq - s1_sq - s2_sq
        exact.append(abs(s1_sq * s2_sq - s1s2 * s1s2))
        fs = float(s) ** 2
        f1, f2 = fs - 2 * l, fs + 2 * l
        f12 = 3 * fs - f1 - f2
        approx.append(abs(f1 * f2 - f12 * f12))
    return SmoothCertificate(l, s_grid, float(min(exact)), float(4 * lq * lq), float(min(approx)))
