"""Exception hierarchy.

Every error raised on purpose derives from :class:`ExpDistortError`.
Validation failures (bad input) derive from :class:`ValidationError`;
:class:`InternalInconsistency` signals a bug rather than bad input.
"""


class ExpDistortError(Exception):
    """Base class for all package errors."""


class ValidationError(ExpDistortError, ValueError):
    """Input failed a structural check."""


class InternalInconsistency(ExpDistortError, RuntimeError):
    """A postcondition that must hold for valid input did not."""


class _TripleViolation(ValidationError):
    def __init__(self, i, j, k, detail=""):
        self.i, self.j, self.k = i, j, k
        msg = f"{type(self).__name__} at basis triple ({i}, {j}, {k})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class JacobiViolation(_TripleViolation):
    pass


class AntisymmetryViolation(_TripleViolation):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotASubalgebra(ValidationError):
    pass


class NotAnIdeal(ValidationError):
    pass


class NotNilpotent(ValidationError):
    pass


class InvalidLeviComplement(ValidationError):
    pass


class EViolatesContainment(ValidationError):
    pass


class NotBetweenRadicals(ValidationError):
    def __init__(self, inclusion, detail=""):
        self.inclusion = inclusion
        super().__init__(f"inclusion {inclusion} fails" + (f": {detail}" if detail else ""))


class RegularElementNotFound(ExpDistortError):
    def __init__(self, seed, trials):
        self.seed, self.trials = seed, trials
        super().__init__(f"no regular element found in {trials} trials (seed={seed})")


class NotAHomomorphism(ValidationError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"rho([e{i}, e{j}]) != [rho(e{i}), rho(e{j})]")


class NotFaithful(ValidationError):
    pass


class NotNilpotentMatrix(ValidationError):
    pass


class NotUnipotent(ValidationError):
    pass


class LogBranchFailure(ExpDistortError, ArithmeticError):
    pass


class OverflowAtScale(ExpDistortError, ArithmeticError):
    def __init__(self, largest_usable_t):
        self.largest_usable_t = largest_usable_t
        super().__init__(f"non-finite values beyond t = {largest_usable_t!r}")


class EtaNotInNPrime(InternalInconsistency):
    pass


class ProjectionUnavailable(ExpDistortError):
    pass


class UnvettedFunction(ValidationError):
    pass


class ZeroInput(ValidationError):
    pass


class WitnessConstructionFailed(ExpDistortError):
    pass


class SuiteUnknown(ExpDistortError, KeyError):
    pass


class ParseError(ValidationError):
    def __init__(self, msg, line=None, column=None):
        self.line, self.column = line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)
