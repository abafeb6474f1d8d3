class QSSError(Exception):
    """
    Base exception for every error raised by the package.
    """

    pass


class FieldError(QSSError):
    """
    Exception for invalid finite field parameters or element operations.
    """

    pass


class NonPrimeCharacteristic(FieldError):
    """
    Exception for a field characteristic which is not a prime.
    """

    pass


class ReduciblePolynomial(FieldError):
    """
    Exception for a modulus polynomial that is not monic, has the wrong degree or factors over F_p.
    """

    pass


class NoBuiltinPolynomial(FieldError):
    """
    Exception for a (p, m) pair without a built-in irreducible polynomial when none was given.
    """

    pass


class FieldMismatch(FieldError):
    """
    Exception for operands that live in different fields.
    """

    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    """
    Exception for inverting the zero element.
    """

    pass


class LinAlgError(QSSError):
    """
    Exception for linear algebra over F_q.
    """

    pass


class DimensionMismatch(LinAlgError):
    """
    Exception for incompatible vector or matrix shapes.
    """

    pass


class NoSolution(LinAlgError):
    """
    Exception for an inconsistent linear system.
    """

    pass


class IndexOutOfRange(LinAlgError, IndexError):
    """
    Exception for column, site or player indices outside the valid range.
    """

    pass


class EmptySelection(LinAlgError):
    """
    Exception for selecting no columns at all.
    """

    pass


class CodeError(QSSError):
    """
    Exception for invalid codes or player subsets.
    """

    pass


class RankDeficientGenerator(CodeError):
    """
    Exception for a generator matrix without full row rank.
    """

    pass


class InvalidSubset(CodeError):
    """
    Exception for a player subset that is empty, full or out of range where that is not allowed.
    """

    pass


class ConsistencyError(CodeError):
    """
    Exception for an exhaustive scan that contradicts the distance bound. Signals a bug.
    """

    pass


class BudgetExceeded(QSSError):
    """
    Exception for enumerations or state vectors larger than the configured budget.
    """

    pass


class SimulationError(QSSError):
    """
    Exception for state vector simulation errors.
    """

    pass


class NormViolation(SimulationError):
    """
    Exception for a state whose norm drifted away from one.
    """

    pass


class DegenerateState(SimulationError):
    """
    Exception for projecting onto an outcome of (numerically) zero probability.
    """

    pass


class SupportLeak(SimulationError):
    """
    Exception for amplitude mass outside the span the decoding isometry is defined on.
    """

    pass


class ProtocolError(QSSError):
    """
    Exception for protocol runs that cannot or did not recover the secret.
    """

    pass


class NotAssisted(ProtocolError):
    """
    Exception for a subset A which is not LOCC-assisting for its complement.
    """

    pass


class PhaseNotEliminated(ProtocolError):
    """
    Exception for a corrected state whose amplitudes still carry outcome-dependent phases.
    """

    pass


class ParseError(QSSError):
    """
    Exception for malformed code specification, secret or subset input.
    """

    pass


class ConfigError(QSSError):
    """
    Exception for an invalid run configuration.
    """

    pass
