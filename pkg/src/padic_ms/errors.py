"""Exception hierarchy.

Every error carries the name of the module that raised it and a stable
``code`` string, which the CLI copies into its structured error output.
"""


class PadicMSError(Exception):
    code = "error"
    module = "padic_ms"


# padic-core
class RingMismatch(PadicMSError):
    code = "ring_mismatch"
    module = "padic"


class DivisionByZero(PadicMSError, ZeroDivisionError):
    code = "division_by_zero"
    module = "padic"


class NotAUnit(PadicMSError):
    code = "not_a_unit"
    module = "padic"


class OutOfConvergenceDomain(PadicMSError):
    code = "out_of_convergence_domain"
    module = "padic"


class PrecisionExhausted(PadicMSError):
    code = "precision_exhausted"
    module = "padic"


# series
class BasisMismatch(PadicMSError):
    code = "basis_mismatch"
    module = "series"


class RingPromotionFailure(PadicMSError):
    code = "ring_promotion_failure"
    module = "series"


class NotStabilized(PadicMSError):
    code = "not_stabilized"
    module = "series"


# symbolic
class SingularMatrix(PadicMSError):
    code = "singular_matrix"
    module = "symbolic"


# operator
class ConvergenceHypothesisViolated(PadicMSError):
    code = "convergence_hypothesis_violated"
    module = "operator"


# periods
class DegenerateTuple(PadicMSError):
    code = "degenerate_tuple"
    module = "periods"


class DenominatorVanishes(PadicMSError):
    code = "denominator_vanishes"
    module = "periods"


class NotRamified(PadicMSError):
    code = "not_ramified"
    module = "periods"


# dwork
class HypothesisViolated(PadicMSError):
    code = "hypothesis_violated"
    module = "dwork"


# lfun
class EmptyOrbit(PadicMSError):
    code = "empty_orbit"
    module = "lfun"


# io / cli
class ParseError(PadicMSError):
    code = "parse_error"
    module = "io"


class ValidationError(PadicMSError):
    code = "validation_error"
    module = "io"
