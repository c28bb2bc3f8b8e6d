"""Exception types shared across the package."""


class DegenerateQuadError(ValueError):
    """Cross-ratio denominator vanishes (d == a or c == b)."""


class NonCollinearError(ValueError):
    pass


class NonCommutingError(ValueError):
    def __init__(self, commutator_norm: float, tol: float):
        super().__init__(
            f"matrices do not commute modulo scalars: |[A,B]| = {commutator_norm:.3e} > {tol:.3e}"
        )
        self.commutator_norm = commutator_norm


class DegenerateConfigurationError(ValueError):
    """Point correspondences not in general position."""


class DomainError(ValueError):
    """A point lies outside the domain of a map."""


class InadmissibleLineError(ValueError):
    """The line is not sent to a translate of the map's base curve."""


class HorizontalImageError(InadmissibleLineError):
    """The line is sent to one or more horizontal lines instead of a curve translate."""

    def __init__(self, message: str, heights: tuple[float, ...]):
        super().__init__(message)
        self.heights = heights


class VerificationError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class CountMismatchError(RuntimeError):
    def __init__(self, pullback: int, residual: int, pairs: list):
        super().__init__(
            f"pullback count {pullback} != residual count {residual}; "
            f"{len(pairs)} differing pairs, first: {pairs[:5]}"
        )
        self.pullback = pullback
        self.residual = residual
        self.pairs = pairs
