"""Exception hierarchy shared by all modules."""


class TrisectError(Exception):
    """Base class for all library errors."""


class InvalidParams(TrisectError):
    """Trisection parameters violate their defining constraints."""


class DimensionMismatch(TrisectError):
    """Vector or matrix shapes are inconsistent."""


class ParseError(TrisectError):
    """A diagram file could not be parsed."""


class NotUnimodular(TrisectError):
    """A square integer matrix has determinant other than +-1."""


class NotSymmetric(TrisectError):
    """A matrix expected to be symmetric is not."""


class NotSublattice(TrisectError):
    """Claimed sublattice is not contained in the ambient lattice."""


class NotDirectSummand(TrisectError):
    """A sublattice has a torsion quotient where a free one is required."""


class MissingArcs(TrisectError):
    """Operation requires arc classes but the diagram carries none."""


class ChainConditionViolated(TrisectError):
    """The composite of the two boundary maps is nonzero."""


class NotStandardPosition(TrisectError):
    """Diagram is not in the canonical standard position."""


class DecompositionFailed(TrisectError):
    """Displacement classes do not lie in the expected span."""


class H1NotZero(TrisectError):
    """First homology of the 4-manifold is nonzero."""


class SymmetryViolated(TrisectError):
    """Partial-symmetry precondition of the splitting lemma fails."""


class NotNormalizable(TrisectError):
    """Standardization pipeline cannot reach the normal form."""
