"""Exception types raised by spreadcodes."""

from __future__ import annotations


class SpreadCodeError(ValueError):
    """Base class for every error raised by this package."""


class InvalidParams(SpreadCodeError):
    pass


class NotPrime(InvalidParams):
    def __init__(self, q: int):
        super().__init__(f"{q} is not prime")
        self.q = q


class NotMonic(InvalidParams):
    pass


class Reducible(InvalidParams):
    """The defining polynomial factors; ``factor_degree`` is the degree of a factor found."""

    def __init__(self, p_coeffs, factor_degree: int):
        super().__init__(
            f"polynomial {list(p_coeffs)} is reducible "
            f"(has an irreducible factor of degree {factor_degree})"
        )
        self.p_coeffs = tuple(p_coeffs)
        self.factor_degree = factor_degree


class FieldTooLarge(SpreadCodeError):
    pass


class Singular(SpreadCodeError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular (rank {rank} < {size})")
        self.rank = rank
        self.size = size


class VerificationFailed(SpreadCodeError):
    pass


class SearchSpaceTooLarge(SpreadCodeError):
    pass


class EnumerationTooLarge(SpreadCodeError):
    pass


class AmbientMismatch(SpreadCodeError):
    pass


class DimensionMismatch(SpreadCodeError):
    pass


class UnsupportedParams(SpreadCodeError):
    pass


class DecodeFailure(SpreadCodeError):
    """No codeword lies within the unique-decoding radius of the received space."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
