"""
Exception hierarchy for horofol
"""
from typing import Optional, Sequence


class HorofolError(Exception):
    """Base class for every error raised by the library"""

    exit_code = 1


class InputError(HorofolError):
    """Bad input: malformed values, unmet preconditions, unreadable files"""

    exit_code = 3


class VerificationFailure(HorofolError):
    """A numerical certificate did not hold"""

    exit_code = 2


# hyperbolic plane

class InvalidPoint(InputError):
    """Point outside the upper half-plane or with non-finite coordinates"""


class InvalidIsometry(InputError):
    """Matrix with determinant away from 1"""


class CoincidentEndpoints(InputError):
    """Geodesic requested between a boundary point and itself"""


class NotLoxodromic(InputError):
    """Operation needs a loxodromic isometry"""


# product space

class DimensionMismatch(InputError):
    """Tuples with different factor counts"""


# alignment machinery

class DegenerateSegment(InputError):
    """Segment with coincident endpoints where a direction is needed"""


class NoConvergence(HorofolError):
    """Boundary projection did not stabilise before the parameter cap"""


class ProjectionsTooClose(InputError):
    """Projections onto the geodesic are not more than 2 apart"""


class RadiusTooSmall(InputError):
    """Shadow radius must exceed 1"""


class NoCandidateAligns(HorofolError):
    """No supplied candidate satisfies the extension alignment"""


class ConstantTooSmall(InputError):
    """Alignment constant below the axis constant of the guiding element"""


# discrete groups

class BallTooLarge(InputError):
    """Word ball exceeds the configured element cap"""

    def __init__(self, cap: int, word_length: int):
        self.cap = cap
        self.word_length = word_length
        super().__init__(
            f"Ball exceeds {cap} elements at word length {word_length}"
        )


class NotJointlyLoxodromic(InputError):
    """Element with a non-loxodromic factor"""

    def __init__(self, factors: Sequence[int], word: Optional[str] = None):
        self.factors = list(factors)
        self.word = word
        label = f" {word}" if word else ""
        super().__init__(
            f"Element{label} is not loxodromic in factor(s) {', '.join(map(str, self.factors))}"
        )


class NoWitnessInBall(HorofolError):
    """Exhaustive ball search found no witness"""


class SpecParse(InputError):
    """Group specification could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


# measures

class InsufficientGrowthData(InputError):
    """Ball too small for the requested estimate"""


class EmptyCells(HorofolError):
    """No boundary cell carries enough mass"""


# harness

class UnknownLemma(InputError):
    """Lemma id without a registered verifier"""


class ConfigError(InputError):
    """Unreadable or invalid configuration"""
