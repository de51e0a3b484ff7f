"""Exception hierarchy.

Every precondition failure raises a subclass of :class:`PreconditionError`;
the CLI maps those to exit code 2.
"""


class PreconditionError(ValueError):
    pass


class DegenerateLattice(PreconditionError):
    pass


class DegenerateSpan(PreconditionError):
    pass


class ZeroVector(PreconditionError):
    pass


class NonPrimitive(PreconditionError):
    pass


class NotPositiveDefinite(PreconditionError):
    pass


class NotARootSet(PreconditionError):
    pass


class UnrecognisedComponent(PreconditionError):
    pass


class NotARoot(PreconditionError):
    pass


class OddRootCount(PreconditionError):
    pass


class BadResidue(PreconditionError):
    pass


class InvalidOrder(PreconditionError):
    pass


class EmptyGroup(PreconditionError):
    pass


class LatticeSyntaxError(PreconditionError):
    pass
