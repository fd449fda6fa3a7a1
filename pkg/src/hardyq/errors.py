"""Exception types shared across the package."""


class HardyDomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NonConvergence(RuntimeError):
    """An iterative method stopped before meeting its tolerance."""


class DegenerateInput(HardyDomainError):
    """Vertices do not describe an admissible simple quadrilateral."""


class MultipleReflex(DegenerateInput):
    """More than one reflex vertex was detected."""


class ClassificationAmbiguous(HardyDomainError):
    """The equidistance curve does not match any of the known patterns."""


class DegenerateNormal(HardyDomainError):
    """Parabola normal requested at its point at infinity."""


class MeshTooCoarse(HardyDomainError):
    """Grid step leaves too few interior nodes."""
