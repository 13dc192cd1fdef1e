"""Exception hierarchy shared by every sumsetlab module."""


class SumsetError(Exception):
    """Base class for all sumsetlab errors."""


class AlphaRangeError(SumsetError, ValueError):
    """alpha (or another index) lies outside its admissible range."""


class CapacityError(SumsetError):
    """Input too large: overflow risk, enumeration cap, or candidate cap."""


class ConsistencyError(SumsetError, ValueError):
    """Arguments that must agree with each other do not."""


class UnsupportedRegimeError(SumsetError, ValueError):
    """Bounds and structure results only cover positive and with-zero inputs."""


class HypothesisError(SumsetError, ValueError):
    """A structure theorem was invoked outside its hypotheses."""
