"""Exception types shared across the package."""


class HcaffError(Exception):
    """Base class for all package errors."""


class ZeroInverse(HcaffError):
    """Inversion of the zero scalar."""


class NegativeRadicand(HcaffError):
    """Square root of a negative rational requested."""


class RankMismatch(HcaffError):
    """Algebra elements or modules of different ranks combined."""


class IndexOutOfRange(HcaffError):
    """Generator index outside 1..d (or 1..d-1 for transpositions)."""


class NonIntegralWeight(HcaffError):
    """An x_i^2 eigenvalue is not of the form a(a+1) with a a nonnegative integer."""


class NonDivisibleDimension(HcaffError):
    """A generalized weight space dimension is not divisible by the block size."""


class NormalizationFailure(HcaffError):
    """An odd involution squares to something other than a positive rational."""


class BlockMismatch(HcaffError):
    """Parabolic block structure does not match the module handed to induction."""


class WeightAbsent(HcaffError):
    """The requested weight does not occur in the module."""


class NotLyndon(HcaffError):
    """Word is not Lyndon for the right-to-left lexicographic order."""


class NotGoodLyndon(HcaffError):
    """Word is not one of the good Lyndon words for the given rank."""


class DegenerateContents(HcaffError):
    """Two consecutive entries of a standard filling share a content."""


class NotAModule(HcaffError):
    """Input matrices fail the defining relations they were claimed to satisfy."""


class InconclusiveAnalysis(HcaffError):
    """Irreducibility analysis could not certify a verdict."""


class UsageError(HcaffError):
    """Malformed command-line or service input."""
