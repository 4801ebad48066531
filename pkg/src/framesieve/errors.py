"""Exception types shared across the package."""


class FrameSieveError(Exception):
    """Base class for every framesieve error."""


class ZeroVectorError(FrameSieveError, ValueError):
    """Vector has (near-)zero L2 norm and cannot be normalized."""


class DimensionMismatchError(FrameSieveError, ValueError):
    """Two vectors that must share a dimension do not."""


class EmptySetError(FrameSieveError, ValueError):
    """An operation received an empty collection it cannot handle."""


class TooFewFramesError(FrameSieveError, ValueError):
    """Leave-one-out style operations need at least two frames."""


class EmptyImageError(FrameSieveError, ValueError):
    """Image has zero pixels or the wrong channel layout."""


class UnreadableImageError(FrameSieveError):
    """Image file exists but could not be decoded."""


class ManifestError(FrameSieveError, ValueError):
    """Frame manifest violates its ordering or schema contract."""


class NonPositiveGammaError(FrameSieveError, ValueError):
    """Temporal scale factor must be strictly positive."""


class EmptyInputError(FrameSieveError, ValueError):
    """Clustering or aggregation received no points."""


class KTooLargeError(FrameSieveError, ValueError):
    """Requested more clusters than there are points."""


class SingleClusterError(FrameSieveError, ValueError):
    """Silhouette is undefined for a single cluster."""


class TooFewPointsError(FrameSieveError, ValueError):
    """Model selection needs at least three points."""


class RangeInvalidError(FrameSieveError, ValueError):
    """Cluster-count search range is inconsistent with the data."""


class WeightSumError(FrameSieveError, ValueError):
    """Score weights must be non-negative and sum to one."""


class BadParameterError(FrameSieveError, ValueError):
    """Selection parameter is outside its allowed range."""


class NonPositiveReferenceError(FrameSieveError, ValueError):
    """Frame-reduction reference count must be positive."""


class MissingGroundTruthError(FrameSieveError, ValueError):
    """A retrieval query has no ground-truth pairing."""


class ContainerFormatError(FrameSieveError):
    """Embedding container bytes do not match the declared layout."""


class BadMagicError(ContainerFormatError):
    """File does not start with the container magic."""


class UnsupportedVersionError(ContainerFormatError):
    """Container version or dtype code is not supported."""


class TruncatedFileError(ContainerFormatError):
    """Container ends before the declared payload does."""


class DuplicateIdError(FrameSieveError, ValueError):
    """Container ids must be unique."""


class RaggedVectorsError(FrameSieveError, ValueError):
    """Container vectors must all share one dimension."""
