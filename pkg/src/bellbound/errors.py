"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
failures onto its contract: 2 for parse/format problems, 3 for domain
problems (sizes, regions, gamut), 4 for numerical non-convergence.
"""


class BellBoundError(Exception):
    exit_code = 3


class ParseError(BellBoundError):
    exit_code = 2


class BadLength(ParseError):
    """A basis bitstring does not have ``n`` characters."""


class DuplicateBasis(ParseError):
    """The same basis bitstring was given twice."""


class NotNormalized(ParseError):
    """Amplitudes (or coefficients) do not have unit norm."""


class BadRegion(BellBoundError):
    """Region A is empty, the full set, or names a site outside ``1..n``."""


class BadAlpha(BellBoundError):
    """Rényi order must be positive."""


class NegativeRadicand(BellBoundError):
    """Generalized concurrence radicand is clearly negative."""


class TooLarge(BellBoundError):
    """Qubit count exceeds what the dense routines are allowed to handle."""


class DimensionMismatch(BellBoundError):
    """Bell settings do not match the number of qubits."""


class BadConcurrence(BellBoundError):
    """Concurrence outside ``[0, 1]``."""


class OutOfRange(BellBoundError):
    """Family angle outside its documented range."""


class OutOfGamut(BellBoundError):
    """Concurrence triple not realizable by the principal inversion branch."""

    def __init__(self, message, formula=None):
        super().__init__(message)
        self.formula = formula


class DegenerateAngles(BellBoundError):
    """An angle cannot be recovered because its cosine prefactor vanishes."""


class BoundaryPoint(BellBoundError):
    """Finite differences would leave the probability simplex."""


class WrongSize(BellBoundError):
    """Operation requires a specific qubit count."""


class EmptyGrid(BellBoundError):
    """Sweep grid or series list is empty."""


class NoConvergence(BellBoundError):
    exit_code = 4
