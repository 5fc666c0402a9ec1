"""Exception hierarchy.

Every error raised for bad input derives from ``PerfDirsError`` (itself a
``ValueError``) so callers can catch the whole family at once.
"""


class PerfDirsError(ValueError):
    pass


class InvalidModulusError(PerfDirsError):
    pass


class MalformedInputError(PerfDirsError):
    pass


class CoordinateOutOfRangeError(PerfDirsError):
    pass


class ZeroWeightError(PerfDirsError):
    pass


class EmptySupportError(PerfDirsError):
    pass


class ModulusMismatchError(PerfDirsError):
    pass


class DegeneratePairError(PerfDirsError):
    pass


class SingularMapError(PerfDirsError):
    pass


class RationalizationError(PerfDirsError):
    """No admissible common denominator was found below the cap."""


class ConstructionError(PerfDirsError):
    pass


class InfeasibleSpecError(PerfDirsError):
    pass
