"""Exception hierarchy shared by every module.

The CLI reports domain errors by class name, so names are part of the interface.
"""


class DLambdaError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(DLambdaError, ValueError):
    pass


class ContainsIdentity(DLambdaError, ValueError):
    pass


class NotInverseClosed(DLambdaError, ValueError):
    def __init__(self, element, missing):
        self.element = element
        self.missing = missing
        super().__init__(f"inverse {missing} of {element} is not in the set")


class DuplicateElement(DLambdaError, ValueError):
    pass


class WrongShape(DLambdaError, ValueError):
    pass


class ClassificationMismatch(DLambdaError, AssertionError):
    """Closure search and gcd criteria disagree. Always an internal bug."""


class NotGenerating(DLambdaError, ValueError):
    def __init__(self, genset, reachable: int):
        self.genset = genset
        self.reachable = reachable
        super().__init__(
            f"{genset} does not generate the group (reaches {reachable} elements)"
        )


class SinkWriteFailure(DLambdaError, OSError):
    pass


class UnsupportedClass(DLambdaError, ValueError):
    pass


class DifferentAmbient(DLambdaError, ValueError):
    pass


class TransferViolation(DLambdaError, AssertionError):
    def __init__(self, element, source_length: int, target_length: int):
        self.element = element
        super().__init__(
            f"length not preserved at {element}: {source_length} -> {target_length}"
        )


class CapExceeded(DLambdaError, ValueError):
    pass
