"""Fixed-step classical Runge-Kutta for autonomous planar systems.

Everything works on plain ``(x, y)`` float tuples; the systems here are two
dimensional and Python floats keep the step bitwise reproducible.
"""

from __future__ import annotations

from typing import Callable, Tuple

State = Tuple[float, float]
Field = Callable[[float, float], State]


def rk4_step(f: Field, x: float, y: float, h: float) -> State:
    k1x, k1y = f(x, y)
    k2x, k2y = f(x + 0.5 * h * k1x, y + 0.5 * h * k1y)
    k3x, k3y = f(x + 0.5 * h * k2x, y + 0.5 * h * k2y)
    k4x, k4y = f(x + h * k3x, y + h * k3y)
    return (x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
            y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y))


def bisect_substep(f: Field, x: float, y: float, h: float,
                   g: Callable[[float, float], float], tol: float = 1e-12) -> float:
    """Sub-step ``sigma`` in ``[0, h]`` where ``g`` of the RK4 state changes sign.

    The state after a partial step ``rk4_step(f, x, y, sigma)`` is a smooth
    function of ``sigma``, so ``g`` along it can be bisected.  The caller
    guarantees ``g`` has opposite signs at ``0`` and ``h``.
    """
    lo, hi = 0.0, h
    g_lo = g(x, y)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = g(*rk4_step(f, x, y, mid))
        if (g_mid > 0) == (g_lo > 0) and g_mid != 0.0:
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
