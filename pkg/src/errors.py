"""
Exceptions shared by every package of the engine.

All of them derive from ValueError: they signal malformed input to an
operation, never a failed law check (those come back as report values).
"""


class CategoryError(ValueError):
    """Base class for structural errors."""


class DomainMismatch(CategoryError):
    pass


class NotAProductDomain(CategoryError):
    pass


class NotEndofunctor(CategoryError):
    pass


class InvalidStructure(CategoryError):
    """Raised when an operation requires a law-valid input and gets a violation."""

    def __init__(self, violation):
        super().__init__(f"Invalid structure: {violation}")
        self.violation = violation


class NotParallel(CategoryError):
    pass


class NotMono(CategoryError):
    pass


class CodomainMismatch(CategoryError):
    pass


class UnknownKind(CategoryError):
    pass


class InvalidInput(CategoryError):
    pass


class NotAdjoint(CategoryError):
    pass


class PointwiseKanMissing(CategoryError):
    pass


class UniverseError(ValueError):
    pass


class MalformedConstraint(UniverseError):
    pass


class UnknownName(UniverseError):
    pass


class UnknownTheorem(UniverseError):
    pass


class SignatureKindMismatch(UniverseError):
    pass


class SpecFileError(ValueError):
    """Problems with an input file; the command line maps these to exit code 2."""


class ParseError(SpecFileError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        message = f"line {line}, column {col}: expected {expected}"
        if found:
            message += f", found {found!r}"
        super().__init__(message)
        self.line = line
        self.col = col
        self.expected = expected


class UnresolvedName(SpecFileError):
    def __init__(self, name: str, line: int = 0):
        super().__init__(f"Unresolved name {name!r}" + (f" on line {line}" if line else ""))
        self.name = name


class IllTypedDeclaration(SpecFileError):
    pass
