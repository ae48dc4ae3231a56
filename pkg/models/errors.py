"""
Exceptions raised by the pseudo-Boolean analysis toolkit
"""

from typing import Optional


class PBFError(ValueError):
    """Base class for every validation or domain error"""
    position: Optional[int] = None


def at_position(error: PBFError, position: int) -> PBFError:
    """Tag an error with the 1-based index of the offending input item"""
    error.position = position
    return error


class DuplicateTerm(PBFError):
    pass


class ZeroCoefficient(PBFError):
    pass


class MaskOutOfRange(PBFError):
    pass


class BadDomainValue(PBFError):
    pass


class BadLength(PBFError):
    pass


class TooManyVariables(PBFError):
    def __init__(self, n: int, cap: int, what: str = "dense table"):
        super().__init__(f"{what} needs n <= {cap}, got n = {n}")
        self.n = n
        self.cap = cap


class BadExponent(PBFError):
    pass


class BadExponents(PBFError):
    pass


class InconsistentProfile(PBFError):
    pass


class BadArgs(PBFError):
    pass


class DuplicateLHS(PBFError):
    pass


class EmptyLHS(PBFError):
    pass


class NonpositiveWeight(PBFError):
    pass


class BadRHS(PBFError):
    pass


class NegativeK(PBFError):
    pass


class EmptySystem(PBFError):
    pass


class ParseError(PBFError):
    """Malformed input file; `line` is 1-based"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
