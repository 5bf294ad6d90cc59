"""Numerical constructions around normal CR structures on the 3-sphere.

Submodules
----------
reeb_flow        weighted circle actions, orbit lengths, wrapping numbers
phase_plane      the curvature equation k'' = -k^2/2 + c as a planar system
orbifold_metric  rotationally symmetric cone metrics on the 2-sphere
sl2_model        SL(2,R) acting on S^3 and the curvature of deformed structures
report, cli      deterministic JSON/CSV/SVG output and the ``crlab`` command
"""

from .errors import (CRLabError, EventNotFound, NoRootFound, NonIntegerRatio, NoSolution,
                     OutsideWindow, PoleOfChart, StepTooLarge)

__version__ = "0.1.0"
