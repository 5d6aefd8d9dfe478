"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class PolysemiError(Exception):
    exit_code = 2


class InputError(PolysemiError, ValueError):
    """Malformed arguments: wrong tuple length, element out of range, bad subset."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(InputError):
    """An operation was called on an input outside its documented domain."""


class CapacityError(PolysemiError):
    exit_code = 3


class PropertyFailure(PolysemiError):
    """A required property (e.g. associativity) does not hold; carries a witness."""

    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConstructionError(PolysemiError):
    """A construction spec violates one of the clauses; ``clause`` is 'a' or 'b'."""

    exit_code = 1

    def __init__(self, clause, message):
        super().__init__(f"clause ({clause}): {message}")
        self.clause = clause


class TheoremViolation(PolysemiError):
    """A computed object contradicts a proven statement. Never expected to occur."""

    exit_code = 4

    def __init__(self, theorem, message, operation=None):
        super().__init__(f"[{theorem}] {message}")
        self.theorem = theorem
        self.operation = operation
