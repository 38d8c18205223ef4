"""Domain errors raised by guard checks across the library."""


class DomainError(Exception):
    """Base class for all domain guard violations."""


class SourceCoincidence(DomainError):
    """An evaluation point coincides with a point source."""


class UnequalAmplitudes(DomainError):
    """An operation that assumes equal source amplitudes got unequal ones."""


class CollinearArrangement(DomainError):
    """The three sources lie on a line, so no closed-form angle exists."""


class DegenerateIndex(DomainError):
    """The phasor scale for the requested index vanishes."""


class GridTooSmall(DomainError):
    """A raster has fewer than 2x2 samples, so no plaquette exists."""


class SingularPoint(DomainError):
    """A propagation kernel was evaluated at its own singularity."""
