"""Exception hierarchy for crlab.

Every domain failure derives from :class:`CRLabError`; the CLI maps these to
exit code 2 and reports the class name verbatim.
"""


class CRLabError(ValueError):
    """Base class for domain errors."""


class NonIntegerRatio(CRLabError):
    """Orbit length ratios are not integral within tolerance."""


class OutsideWindow(CRLabError):
    """Level value lies outside the open periodic window of the first integral."""


class StepTooLarge(CRLabError):
    """Fixed-step integration drifted off its level set."""


class NoSolution(CRLabError):
    """Cone data admit no rotationally symmetric solution."""


class EventNotFound(CRLabError):
    """The terminating event was not reached within the safety horizon."""


class NoRootFound(CRLabError):
    """Bracketed root search failed; indicates a bug rather than a math condition."""


class PoleOfChart(CRLabError):
    """Point lies on the excluded circle y = 0 of the SL(2,R) chart."""
