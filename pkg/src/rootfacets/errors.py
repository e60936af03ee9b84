"""Exception hierarchy shared by every module of the package."""


class RootFacetsError(Exception):
    """Base class for all errors raised by rootfacets."""


class IllegalRank(RootFacetsError, ValueError):
    pass


class NotARoot(RootFacetsError, ValueError):
    pass


class NotPositive(RootFacetsError, ValueError):
    pass


class NotAbelian(RootFacetsError, ValueError):
    pass


class NotMembers(RootFacetsError, ValueError):
    pass


class EmptyS(RootFacetsError, ValueError):
    pass


class RankGuardExceeded(RootFacetsError):
    pass


class OrbitGuardExceeded(RootFacetsError):
    pass


class UnknownType(RootFacetsError, ValueError):
    pass


class SingularSet(RootFacetsError, ValueError):
    pass


class DegenerateInput(RootFacetsError, ValueError):
    pass


class CertificationFailure(RootFacetsError):
    """A proved statement failed to hold on concrete data.

    This always indicates a bug in the implementation (or in the input
    data), never a user error.
    """


class RankViolation(CertificationFailure):
    pass
