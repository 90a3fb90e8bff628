"""Exception hierarchy shared by all modules."""


class ConjStabError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(ConjStabError, ValueError):
    pass


class UnknownType(InvalidInput):
    pass


class NotSymmetric(InvalidInput):
    pass


class BadDiagonal(InvalidInput):
    pass


class BadEntry(InvalidInput):
    pass


class UnknownVertex(InvalidInput, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotSphericalInput(InvalidInput):
    pass


class NotContained(InvalidInput):
    pass


class VertexInSubset(InvalidInput):
    pass


class BadSubset(InvalidInput):
    pass


class BadParams(InvalidInput):
    pass


class ChainMismatch(InvalidInput):
    def __init__(self, index, message):
        super().__init__(f"move {index}: {message}")
        self.index = index


class CapExceeded(ConjStabError):
    """Raised when an enumeration finds more elements than allowed."""

    def __init__(self, cap, count):
        super().__init__(f"enumeration cap {cap} exceeded ({count} elements found)")
        self.cap = cap
        self.count = count
