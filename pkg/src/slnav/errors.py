"""Exception hierarchy shared across the package."""


class SlnavError(Exception):
    """Base class for all package errors."""


class GraphError(SlnavError):
    """Invalid graph input."""


class SelfLoopError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class NodeOutOfRangeError(GraphError):
    pass


class TooFewEdgesError(GraphError):
    """Line graph needs at least two base edges."""


class UnsupportedSizeError(SlnavError):
    """Exhaustive enumeration only supported up to 7 nodes."""


class EmptyInputError(SlnavError):
    pass


class SizeMismatchError(SlnavError):
    """Remap permutations do not match the sample's node/edge counts."""


class NoConvergenceError(SlnavError):
    """Jacobi eigensolver exceeded its sweep budget."""


class KOutOfRangeError(SlnavError):
    """Requested eigenvector count outside the non-zero spectrum."""


class DeadEndError(SlnavError):
    """All candidate edges excluded by the visited filter."""


class MalformedSequenceError(SlnavError):
    """Token sequence violates the sample grammar."""


class NodeLabelOutOfVocabError(SlnavError):
    """Node label outside the fixed 0-9 token range."""
