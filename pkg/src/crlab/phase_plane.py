"""Phase plane of the curvature equation ``k'' = -k^2/2 + c``.

Writing ``x = k`` and ``y = k'`` gives the planar field
``Z = y d/dx + (c - x^2/2) d/dy`` with conserved cubic
``F(x, y) = y^2 + x^3/3 - 2 c x``.  For ``c = s^2/2 > 0`` the level sets with
``F`` strictly between ``-2 s^3/3`` and ``2 s^3/3`` contain a closed orbit
around the centre ``(s, 0)``; its half period is the meridian length of the
corresponding metric on the sphere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ._rk4 import bisect_substep, rk4_step
from .errors import OutsideWindow, StepTooLarge

# relative width used to decide that a level sits on a window boundary
WINDOW_RTOL = 1e-12


@dataclass(frozen=True)
class PhaseParams:
    c: float

    @property
    def s(self) -> Optional[float]:
        """``sqrt(2c)`` when ``c > 0``, else ``None``."""
        return math.sqrt(2.0 * self.c) if self.c > 0 else None

    @classmethod
    def from_s(cls, s: float) -> "PhaseParams":
        return cls(0.5 * s * s)

    def window(self) -> Tuple[float, float]:
        """Open interval of ``F`` values carrying periodic orbits."""
        s = self.s
        if s is None:
            raise OutsideWindow(f"no periodic window for c = {self.c!r} <= 0")
        return -2.0 * s ** 3 / 3.0, 2.0 * s ** 3 / 3.0


@dataclass(frozen=True)
class PhaseState:
    x: float
    y: float


class LevelClass(str, enum.Enum):
    SINGLE_LINE = "SingleLine"
    CIRCLE_AND_LINE = "CircleAndLine"
    POINT_AND_LINE = "PointAndLine"
    NODAL_CUBIC = "NodalCubic"
    FIXED_POINT_ONLY = "FixedPointOnly"


@dataclass(frozen=True)
class LevelSet:
    F0: float
    roots: Tuple[float, ...]
    cls: LevelClass
    special_point: Optional[PhaseState] = None  # centre or node on the boundary levels


@dataclass
class PhaseOrbit:
    params: PhaseParams
    F0: float
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    F_drift: float
    half_period: Optional[float] = None

    @property
    def samples(self) -> List[Tuple[float, PhaseState]]:
        return [(float(ti), PhaseState(float(xi), float(yi)))
                for ti, xi, yi in zip(self.t, self.x, self.y)]


def vector_field(p: PhaseParams, s: PhaseState) -> Tuple[float, float]:
    return s.y, p.c - 0.5 * s.x * s.x


def first_integral(p: PhaseParams, s: PhaseState) -> float:
    return s.y * s.y + s.x ** 3 / 3.0 - 2.0 * p.c * s.x


def _F(c, x, y):
    return y * y + x ** 3 / 3.0 - 2.0 * c * x


def fixed_points(p: PhaseParams) -> List[PhaseState]:
    if p.c < 0:
        return []
    if p.c == 0:
        return [PhaseState(0.0, 0.0)]
    s = p.s
    return [PhaseState(-s, 0.0), PhaseState(s, 0.0)]


# -- cubic roots --------------------------------------------------------------

def _newton_polish(x: float, p: float, q: float, tol: float = 1e-13, maxiter: int = 20) -> float:
    for _ in range(maxiter):
        fx = (x * x + p) * x + q
        d = 3.0 * x * x + p
        if d == 0.0:
            break
        dx = fx / d
        x_new = x - dx
        # a step that does not reduce the residual means we are at round-off
        if abs((x_new * x_new + p) * x_new + q) > abs(fx):
            break
        x = x_new
        if abs(dx) <= tol * max(1.0, abs(x)):
            break
    return x


def depressed_cubic_roots(p: float, q: float) -> Tuple[float, ...]:
    """Real roots of ``x^3 + p x + q = 0`` in increasing order.

    Three real roots (counted with multiplicity) are found with the
    trigonometric formula, otherwise the single real root comes from
    Cardano's formula.  Every root is Newton-polished.
    """
    if p == 0.0 and q == 0.0:
        return (0.0, 0.0, 0.0)
    disc = -(4.0 * p ** 3 + 27.0 * q * q)
    if p < 0 and disc >= 0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        phi = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [m * math.cos(phi - 2.0 * math.pi * j / 3.0) for j in range(3)]
        roots = sorted(_newton_polish(r, p, q) for r in roots)
        return tuple(roots)
    sq = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    r = float(np.cbrt(-q / 2.0 + sq) + np.cbrt(-q / 2.0 - sq))
    return (_newton_polish(r, p, q),)


def level_roots(p: PhaseParams, F0: float) -> Tuple[float, ...]:
    """Roots of ``F(x, 0) = F0``, i.e. of ``x^3 - 6 c x - 3 F0 = 0``."""
    return depressed_cubic_roots(-6.0 * p.c, -3.0 * F0)


def classify_level(p: PhaseParams, F0: float) -> LevelSet:
    """Topological type of the level set ``F = F0``."""
    roots = level_roots(p, F0)
    if p.c < 0:
        return LevelSet(F0, roots, LevelClass.SINGLE_LINE)
    if p.c == 0:
        if F0 == 0:
            return LevelSet(F0, roots, LevelClass.FIXED_POINT_ONLY, PhaseState(0.0, 0.0))
        return LevelSet(F0, roots, LevelClass.SINGLE_LINE)
    s = p.s
    lo, hi = p.window()
    edge = WINDOW_RTOL * max(1.0, hi)
    if abs(F0 - lo) <= edge:
        return LevelSet(F0, roots, LevelClass.POINT_AND_LINE, PhaseState(s, 0.0))
    if abs(F0 - hi) <= edge:
        return LevelSet(F0, roots, LevelClass.NODAL_CUBIC, PhaseState(-s, 0.0))
    if lo < F0 < hi:
        return LevelSet(F0, roots, LevelClass.CIRCLE_AND_LINE)
    return LevelSet(F0, roots, LevelClass.SINGLE_LINE)


def _window_roots(p: PhaseParams, F0: float) -> Tuple[float, float, float]:
    if p.c <= 0:
        raise OutsideWindow(f"c = {p.c!r} has no periodic orbits")
    lo, hi = p.window()
    if not lo < F0 < hi:
        raise OutsideWindow(f"F0 = {F0!r} is outside the periodic window ({lo!r}, {hi!r})")
    roots = level_roots(p, F0)
    if len(roots) != 3:
        raise OutsideWindow(f"F0 = {F0!r} does not cut the x-axis three times")
    return roots


def crossings(p: PhaseParams, F0: float) -> Tuple[float, float]:
    """Axis crossings ``(s1, s2)`` of the closed orbit on level ``F0``.

    ``s1`` lies in ``(-s, s)`` and ``s2`` in ``(s, 2s)``; the remaining root
    ``x0 = -(s1 + s2)`` of the cubic lies on the unbounded branch.
    """
    _, s1, s2 = _window_roots(p, F0)
    return s1, s2


def period_quadrature(p: PhaseParams, F0: float, n_nodes: int = 64) -> float:
    """Half period of the closed orbit on level ``F0`` by Gauss-Legendre quadrature.

    Along the orbit ``y^2 = (k - x0)(k - s1)(s2 - k)/3``, and the travel time
    from ``s1`` to ``s2`` is the integral of ``dk/y``.  Substituting
    ``k = s1 + (s2 - s1) sin^2(theta)`` removes both inverse square-root
    endpoint singularities and leaves

        tau = 2 sqrt(3) * int_0^{pi/2} dtheta / sqrt(k(theta) - x0).
    """
    x0, s1, s2 = _window_roots(p, F0)
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    theta = 0.25 * math.pi * (nodes + 1.0)
    k = s1 + (s2 - s1) * np.sin(theta) ** 2
    integral = 0.25 * math.pi * float(np.dot(weights, 1.0 / np.sqrt(k - x0)))
    return 2.0 * math.sqrt(3.0) * integral


def weierstrass_reduce(p: PhaseParams, F0: float) -> Tuple[float, float]:
    """Constants ``(w_p, w_q)`` with ``(z')^2 = z^3 + w_p z + w_q`` for ``z = -k/3``."""
    return -2.0 * p.c / 3.0, F0 / 9.0


def integrate_orbit(p: PhaseParams, start: PhaseState, t_end: float, step: float,
                    event_tol: float = 1e-12) -> PhaseOrbit:
    """RK4 trajectory of ``Z`` from ``start`` over ``[0, t_end]``.

    The step is shrunk to ``t_end / ceil(t_end / step)`` so the grid lands on
    ``t_end``.  When the start lies on the closed component of a periodic
    level, the period is measured from upward crossings of the section
    ``{y = 0, x < s}`` (each refined by bisection on a partial RK4 step) and
    half of it is stored as ``half_period``.

    Raises :class:`StepTooLarge` when ``max |F - F0|`` exceeds
    ``1e-6 * (1 + |F0|)``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    c = p.c
    n = max(1, math.ceil(t_end / step)) if t_end > 0 else 0
    h = t_end / n if n else 0.0

    def f(x, y):
        return y, c - 0.5 * x * x

    xs = np.empty(n + 1)
    ys = np.empty(n + 1)
    x, y = float(start.x), float(start.y)
    xs[0], ys[0] = x, y
    for i in range(n):
        x, y = rk4_step(f, x, y, h)
        xs[i + 1], ys[i + 1] = x, y
    ts = np.arange(n + 1) * h

    F0 = _F(c, start.x, start.y)
    drift = float(np.max(np.abs(_F(c, xs, ys) - F0)))
    if drift > 1e-6 * (1.0 + abs(F0)):
        raise StepTooLarge(f"first-integral drift {drift:.3e} with step {h!r}")

    half = None
    if c > 0 and _on_closed_component(p, F0, start):
        s = p.s
        hits = []
        if start.y == 0.0 and start.x < s:
            hits.append(0.0)
        up = np.nonzero((ys[:-1] < 0) & (ys[1:] >= 0) & (xs[:-1] < s))[0]
        for i in up:
            sigma = bisect_substep(f, xs[i], ys[i], h, lambda _x, _y: _y, event_tol)
            hits.append(ts[i] + sigma)
            if len(hits) == 2:
                break
        if len(hits) == 2:
            half = 0.5 * (hits[1] - hits[0])
    return PhaseOrbit(p, F0, ts, xs, ys, drift, half)


def _on_closed_component(p: PhaseParams, F0: float, start: PhaseState) -> bool:
    lo, hi = p.window()
    if not lo < F0 < hi:
        return False
    x0, s1, _ = level_roots(p, F0)
    return start.x > 0.5 * (x0 + s1)
