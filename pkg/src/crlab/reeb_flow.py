"""Weighted circle actions ``i a x d/dx + i b y d/dy`` on the unit sphere of C^2.

The orbit structure of such a flow depends only on the ratio of the two
rotation speeds.  Rationality is declared by the caller through the type of
:class:`Weights` value: floats cannot tell a rational ratio from an
irrational one, so nothing here tries to guess.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from .errors import NonIntegerRatio

TWO_PI = 2.0 * math.pi
GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

# time step of the orbit sampler, incommensurable with 2*pi
SAMPLE_DT = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class RationalPair:
    """Speeds in ratio ``p : q`` with orbit-length scale ``c``.

    ``p`` and ``q`` are reduced to lowest terms on construction.
    """

    p: int
    q: int
    c: float = 1.0

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p != self.p or q != self.q or p <= 0 or q <= 0:
            raise ValueError(f"p, q must be positive integers, got {self.p!r}, {self.q!r}")
        if not self.c > 0:
            raise ValueError(f"scale c must be positive, got {self.c!r}")
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "c", float(self.c))


@dataclass(frozen=True)
class IrrationalRatio:
    """An explicitly irrational speed ratio, tagged with how it is known to be irrational."""

    value: float
    certificate: str

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError(f"ratio must be positive, got {self.value!r}")
        if not self.certificate:
            raise ValueError("an irrational ratio needs a certificate tag")

    @classmethod
    def golden(cls) -> "IrrationalRatio":
        return cls(GOLDEN, "golden")


Weights = Union[RationalPair, IrrationalRatio]


class Regularity(str, enum.Enum):
    REGULAR = "Regular"
    QUASI_REGULAR = "QuasiRegular"
    IRREGULAR = "Irregular"


@dataclass(frozen=True)
class RegularityReport:
    """Orbit invariants of a weighted flow.

    ``lengths`` is ``(len_x0, len_y0, len_generic)``: the periods of the
    exceptional orbits in ``{x=0}`` and ``{y=0}`` and of a generic orbit.
    """

    cls: Regularity
    lengths: Optional[Tuple[float, float, float]] = None
    wrapping: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class SphereState:
    x: complex
    y: complex

    def __post_init__(self):
        n = abs(self.x) ** 2 + abs(self.y) ** 2
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"state is off the unit sphere: |x|^2+|y|^2 = {n!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=complex)


def classify_weights(w: Weights) -> RegularityReport:
    """Regularity class, orbit lengths ``(qc, pc, pqc)`` and wrapping numbers."""
    if isinstance(w, IrrationalRatio):
        return RegularityReport(Regularity.IRREGULAR)
    p, q, c = w.p, w.q, w.c
    cls = Regularity.REGULAR if p == q == 1 else Regularity.QUASI_REGULAR
    return RegularityReport(cls, (q * c, p * c, p * q * c), (p, q))


def reeb_speeds(w: RationalPair) -> Tuple[float, float]:
    """Rotation speeds ``(a, b)`` whose orbit periods are the lengths of ``w``.

    The circle ``{y=0}`` has period ``2*pi/a = p*c`` and ``{x=0}`` has period
    ``2*pi/b = q*c``.
    """
    return TWO_PI / (w.p * w.c), TWO_PI / (w.q * w.c)


def wrapping_from_lengths(len_x0: float, len_y0: float, len_generic: float,
                          tol: float = 1e-9) -> Tuple[int, int]:
    """Recover ``(p, q)`` from the three orbit lengths.

    ``p = len_generic / len_x0`` and ``q = len_generic / len_y0``; both must be
    integers within ``tol`` (relative) and coprime.
    """
    if min(len_x0, len_y0, len_generic) <= 0:
        raise ValueError("orbit lengths must be positive")
    out = []
    for denom in (len_x0, len_y0):
        ratio = len_generic / denom
        n = round(ratio)
        if n < 1 or abs(ratio - n) > tol * max(1.0, abs(ratio)):
            raise NonIntegerRatio(f"length ratio {ratio!r} is not an integer")
        out.append(int(n))
    p, q = out
    if math.gcd(p, q) != 1:
        raise NonIntegerRatio(f"wrapping numbers ({p}, {q}) are not coprime; "
                              "the generic length is not the least common period")
    return p, q


def flow(a: float, b: float, t: float, s: SphereState) -> SphereState:
    return SphereState(np.exp(1j * a * t) * s.x, np.exp(1j * b * t) * s.y)


def flow_array(a: float, b: float, t, x, y):
    """Vectorised flow on arrays of points (no sphere validation)."""
    return np.exp(1j * a * t) * x, np.exp(1j * b * t) * y


def torus_gap(a: float, b: float, n_samples: int, grid: Optional[int] = None) -> float:
    """Grid-based estimate of the largest hole left by a sampled orbit on the torus.

    The orbit angles ``(a t, b t) mod 2*pi`` are sampled at ``t = k * dt`` for
    ``k < n_samples``.  The flat torus ``[0, 2*pi)^2`` is cut into a ``G x G``
    grid (``G = ceil(sqrt(n)/4)`` unless given) and the estimate is the largest
    distance from a cell centre to the nearest occupied cell centre, plus one
    cell circumradius, capped at the torus diameter ``pi*sqrt(2)``.

    With a fixed grid the estimate can only decrease as samples are added.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    g = grid if grid is not None else max(1, math.ceil(math.sqrt(n_samples) / 4))
    h = TWO_PI / g
    t = np.arange(n_samples) * SAMPLE_DT
    ang = np.stack([(a * t) % TWO_PI, (b * t) % TWO_PI], axis=1)
    cells = np.minimum((ang // h).astype(np.int64), g - 1)
    occupied = np.zeros((g, g), dtype=bool)
    occupied[cells[:, 0], cells[:, 1]] = True

    centres_1d = (np.arange(g) + 0.5) * h
    cu, cv = np.meshgrid(centres_1d, centres_1d, indexing="ij")
    centres = np.stack([cu.ravel(), cv.ravel()], axis=1)
    occ = centres[occupied.ravel()]
    # boxsize makes the tree periodic; nudge into [0, L) to satisfy cKDTree
    tree = cKDTree(occ % TWO_PI, boxsize=TWO_PI)
    dist, _ = tree.query(centres % TWO_PI)
    circumradius = h * math.sqrt(2.0) / 2.0
    return float(min(math.pi * math.sqrt(2.0), dist.max() + circumradius))
