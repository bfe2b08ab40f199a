"""Exception vocabulary shared across the package."""


class K4GlueError(Exception):
    """Base class for every error raised by this package."""


# graph model
class LoopEdge(K4GlueError):
    pass


class DuplicateEdge(K4GlueError):
    pass


class DegreeViolation(K4GlueError):
    pass


class VertexOutOfRange(K4GlueError):
    pass


class OverlappingBlocks(K4GlueError):
    pass


class BlockSizeNot4(K4GlueError):
    pass


class IndexOutOfRange(K4GlueError):
    pass


# oracles
class BudgetExceeded(K4GlueError):
    """An exact search ran past its node budget instead of hanging."""


#: pipelines surface oracle budget exhaustion under this name
OracleBudgetExceeded = BudgetExceeded


class PreconditionViolated(K4GlueError):
    pass


# engines
class NotNormalized(K4GlueError):
    pass


class BadVertexPresent(K4GlueError):
    pass


class NotAdmissible(K4GlueError):
    pass


class NotAnISR(K4GlueError):
    pass


class PartSizeNot4(K4GlueError):
    pass


class OddVertexCount(K4GlueError):
    pass


class HypothesisNotMet(K4GlueError):
    pass


class InternalInvariantViolation(K4GlueError):
    """A property the algorithms guarantee by construction failed to hold."""


# harness
class UnrealizableProfile(K4GlueError):
    pass


class InvalidDocument(K4GlueError):
    pass
