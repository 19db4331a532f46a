"""Exception hierarchy. Each CLI-facing error carries its process exit code."""


class SGCountError(Exception):
    exit_code = 1


class UnsupportedFamily(SGCountError):
    exit_code = 2


class NoClosedForm(SGCountError):
    pass


class SizeLimit(SGCountError):
    pass


class ArityMismatch(SGCountError):
    pass


class FixtureMismatch(SGCountError):
    exit_code = 3


class UnknownFixture(SGCountError):
    pass


class BudgetExceeded(SGCountError):
    exit_code = 4

    def __init__(self, required, budget):
        super().__init__(f"derivation needs {required} assignments, budget is {budget}")
        self.required = required
        self.budget = budget


class StageCap(SGCountError):
    exit_code = 4


class OracleMismatch(SGCountError):
    exit_code = 5


class EdgeCap(SGCountError):
    pass


class SymmetryViolation(SGCountError):
    pass


class Disconnected(SGCountError):
    pass


class RangeError(SGCountError):
    pass


class DegenerateSystem(SGCountError):
    pass
