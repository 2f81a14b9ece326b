"""Exception hierarchy shared by the library and the command line."""


class LipstabError(Exception):
    """Base class for every error raised on purpose by this package."""


class DimensionError(LipstabError, ValueError):
    pass


class InputError(LipstabError, ValueError):
    """Malformed user input (instance files, rational strings, flags)."""


class DomainError(LipstabError):
    """A parameter or point lies outside the region where a quantity exists."""


class DualInfeasible(DomainError):
    def __init__(self, msg="argmin mapping has empty domain: -c is not in cone{a_t}"):
        super().__init__(msg)


class ParameterOutsideDomain(DomainError):
    pass


class PointNotOptimal(DomainError):
    pass


class InfeasiblePoint(DomainError):
    pass


class EmptyOptimalSet(DomainError):
    pass


class EnumerationCapExceeded(LipstabError):
    pass


class TooManyGenerators(EnumerationCapExceeded):
    pass
