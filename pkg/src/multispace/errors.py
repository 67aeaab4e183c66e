"""Exception hierarchy shared by all modules."""


class MultispaceError(ValueError):
    """Base class for domain errors raised by the library."""


class DimensionMismatch(MultispaceError):
    pass


class DomainError(MultispaceError):
    """An argument lies outside the region where a closed form is defined."""


class SingularSlice(DomainError):
    pass


class EmptySlice(DomainError):
    pass


class NonFiniteImage(DomainError):
    pass


class MissingSection(MultispaceError):
    pass


class QuadratureError(MultispaceError):
    pass


class NoAccelerationWindow(MultispaceError):
    pass


class GraphError(MultispaceError):
    pass


class NotEmbeddable(MultispaceError):
    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class MalformedModel(MultispaceError):
    pass


class IncompatibleFamily(MultispaceError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NoAmalgam(MultispaceError):
    pass


class UnderdeterminedFamily(MultispaceError):
    pass
