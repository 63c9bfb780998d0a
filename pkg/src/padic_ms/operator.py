"""The p-adic Maass-Shimura operator on q-expansions.

For a weight ``k``, a period ratio ``y_over_z`` and an integer ``j >= 0``::

    theta_k^j f = sum_{i=0}^{j} c_i(j) y_over_z^i p^(-b(j-i)) theta((q d/dq)^(j-i) f)

with ``c_i(j) = C(j+k-1, i) C(j, i) i!`` and ``theta`` the value at q = 1.
Multiplying by ``p^(bj)`` gives the normalized operator ``(p^b theta_k)^j``,
which is the one that extends to exponents ``j`` in ``Z/(p-1) x Z_p`` on
p-stabilized series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConvergenceHypothesisViolated,
    NotStabilized,
    PrecisionExhausted,
    RingPromotionFailure,
)
from .padic import INF, CoefficientRing, Padic, WeightExponent, padic_power, vp_factorial
from .series import MONOMIAL_Q, TruncatedSeries


@dataclass(frozen=True, eq=False)
class OperatorParams:
    """Weight ``k``, ratio ``y_over_z = -theta(y_dR)/z`` and the scaling exponent ``b``.

    ``p_to_b`` must be supplied when ``b`` is not an integer: any element
    of absolute value ``p^-b`` (typically in a ramified ring).
    """

    k: int
    y_over_z: Padic
    b: Fraction = Fraction(0)
    p_to_b: Padic | None = None

    def __post_init__(self):
        object.__setattr__(self, "b", Fraction(self.b))
        if self.p_to_b is None:
            if self.b.denominator != 1:
                raise ValueError("a non-integral b needs an explicit p^b element")
            object.__setattr__(self, "p_to_b", self.ring.one() * Padic.from_rational(
                self.ring, Fraction(self.prime) ** int(self.b)))
        elif self.p_to_b.valuation() != self.b:
            raise ValueError(f"p^b element has valuation {self.p_to_b.valuation()}, expected {self.b}")

    @classmethod
    def ordinary(cls, k: int, ring: CoefficientRing) -> "OperatorParams":
        return cls(k, ring.zero())

    @property
    def ring(self) -> CoefficientRing:
        return self.y_over_z.ring

    @property
    def prime(self) -> int:
        return self.ring.prime

    @property
    def precision(self) -> int:
        return self.ring.precision

    def scaled_ratio(self) -> Padic:
        """``y_over_z * p^b``."""
        return self.y_over_z * self.p_to_b

    def convergence_margin(self):
        """``v(y_over_z p^b) + 1/(p-1)``; must be positive for continuous weights."""
        v = self.scaled_ratio().valuation()
        return INF if v == INF else v + Fraction(1, self.prime - 1)

    def check_convergence(self):
        if self.prime == 2:
            raise ConvergenceHypothesisViolated("the operator layer needs an odd prime")
        if self.convergence_margin() <= 0:
            raise ConvergenceHypothesisViolated(
                f"|y_over_z p^b| must be < p^(1/(p-1)); v = {self.scaled_ratio().valuation()}")


@dataclass(frozen=True, eq=False)
class ThetaResult:
    value: Padic
    truncation_index: int


# --------------------------------------------------------------------------
# interpolation coefficients


def _binom_int(n: int, i: int) -> int:
    # generalized binomial for any integer n
    num = 1
    for t in range(i):
        num *= n - t
    return num // math.factorial(i)


def c_coeff_int(i: int, j: int, k: int) -> int:
    """``C(j+k-1, i) C(j, i) i!`` for integers (generalized binomials)."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return _binom_int(j + k - 1, i) * _binom_int(j, i) * math.factorial(i)


def c_coeffs_int(j: int, k: int, count: int) -> list[int]:
    """``[c_0(j), ..., c_{count-1}(j)]`` by the ratio recursion."""
    out, c = [], 1
    for i in range(count):
        if i:
            c = c * (j + k - i) * (j - i + 1) // i
        out.append(c)
    return out


def c_coeffs(j: WeightExponent, k: int, count: int) -> list[Padic]:
    """``c_i(j)`` for ``i < count`` as p-adic numbers.

    Embedded integers use exact integer arithmetic; other exponents use
    falling factorials in the p-adic part of ``j``.
    """
    ring = j.ring
    if j.integer is not None:
        return [Padic.from_rational(ring, c) for c in c_coeffs_int(j.integer, k, count)]
    J = j.padic_part
    out, c = [], ring.one()
    for i in range(count):
        if i:
            c = c * (J + (k - i)) * (J - (i - 1)) / i
        out.append(c)
    return out


def c_coeff(i: int, j, k: int, ring: CoefficientRing | None = None) -> Padic:
    if isinstance(j, int):
        if ring is None:
            raise ValueError("an integer j needs a ring")
        return Padic.from_rational(ring, c_coeff_int(i, j, k))
    return c_coeffs(j, k, i + 1)[i]


def c_coeff_by_limit(i: int, j: WeightExponent, k: int, m: int) -> Padic:
    """``c_i(j_m)`` for the integer approximant ``j_m`` of ``j`` mod ``(p-1)p^m``."""
    return Padic.from_rational(j.ring, c_coeff_int(i, j.approximant(m), k))


# --------------------------------------------------------------------------
# stabilization


def p_stabilize(f: TruncatedSeries) -> TruncatedSeries:
    """Kill the monomial coefficients at indices divisible by p (including 0)."""
    mono = f.to_monomial()
    p = f.prime
    coeffs = tuple(f.ring.zero() if n % p == 0 else a for n, a in enumerate(mono.coeffs))
    return TruncatedSeries(f.ring, MONOMIAL_Q, coeffs).in_basis(f.basis)


def p_stabilize_average(f: TruncatedSeries) -> TruncatedSeries:
    """``f - (1/p) sum_j f(zeta_p^j q)`` computed in the cyclotomic ring."""
    base = f.ring
    if base.kind == "cyclotomic":
        g = f
    elif base.kind == "Qp":
        g = f.promote(CoefficientRing("cyclotomic", base.prime, base.precision))
    else:
        raise RingPromotionFailure(f"no cyclotomic compositum for {base.tag}")
    g = g.to_monomial()
    p = f.prime
    total = g.substitute_root_of_unity(0)
    for j in range(1, p):
        total = total + g.substitute_root_of_unity(j)
    result = g - total.scale(Fraction(1, p))
    if base.kind == "Qp":
        result = result.demote(base)
    return result.in_basis(f.basis)


# --------------------------------------------------------------------------
# theta


def _theta_euler_power(mono: TruncatedSeries, e: int) -> Padic:
    """``theta((q d/dq)^e f)`` for a monomial series: ``sum n^e a_n`` with ``0^0 = 1``."""
    ring = mono.ring
    total = ring.zero()
    for n, a in enumerate(mono.coeffs):
        if a.is_zero():
            continue
        if n == 0:
            if e == 0:
                total = total + a
            continue
        base = Padic.from_rational(a.ring.base(), n)
        total = total + a * base**e
    return total


def _min_coefficient_valuation(mono: TruncatedSeries):
    return min(a.valuation_lower_bound() for a in mono.coeffs)


def truncation_index(params: OperatorParams, coeff_valuation, target) -> int:
    """Smallest ``i*`` with every term ``i > i*`` of valuation ``>= target``.

    Term ``i`` has valuation at least
    ``v(i!) + i v(y_over_z p^b) + coeff_valuation`` and
    ``v(i!) >= (i - (p-1)(log_p i + 1))/(p-1)``.
    """
    ratio = params.scaled_ratio()
    if ratio.is_zero() or coeff_valuation == INF:
        return 0
    p = params.prime
    eps = params.convergence_margin()
    if eps <= 0:
        raise ConvergenceHypothesisViolated("series in the weight does not converge")
    v = ratio.valuation()
    # i*eps - log_p(i) - 1 + coeff_valuation bounds term i from below and
    # increases for i > 1/(eps ln p)
    start = int(1 / (float(eps) * math.log(p))) + 2
    i = start
    while i * eps - math.log(i, p) - 1 + coeff_valuation < target + 1e-9:
        i += 1
    # walk back while the exact digit-sum bound still clears the target
    while i > 1:
        prev = i - 1
        vfact = vp_factorial(prev, p)
        if vfact + prev * v + coeff_valuation >= target:
            i = prev
        else:
            break
    return i - 1


def theta_k_j_integer(f: TruncatedSeries, j: int, params: OperatorParams,
                      normalized: bool = False, truncate: bool = True) -> Padic:
    """``theta_k^j f`` for an integer ``j >= 0``; ``normalized`` gives ``(p^b theta_k)^j f``.

    With ``truncate`` the i-sum stops at the truncation index when that is
    smaller than ``j`` (the dropped terms vanish at working precision).
    """
    return theta_integer_result(f, j, params, normalized, truncate).value


def theta_integer_result(f, j, params, normalized=False, truncate=True) -> ThetaResult:
    if j < 0:
        raise ValueError("theta_k_j_integer needs j >= 0")
    ring = params.ring
    mono = f.to_monomial()
    if mono.is_zero():
        return ThetaResult(ring.zero(), 0)
    top = j
    if truncate:
        vmin = _min_coefficient_valuation(mono)
        target = params.precision + max(0, -vmin)
        if not normalized:
            target -= params.b * j
        top = min(j, truncation_index(params, vmin, target))
    y = params.y_over_z
    pb = params.p_to_b
    if not normalized and pb.valuation() != 0:
        if (pb.valuation() * j) > params.precision:
            raise PrecisionExhausted("p^-b denominators exceed the working precision")
    coeffs = c_coeffs_int(j, params.k, top + 1)
    total = ring.zero()
    y_pow = ring.one()
    scale = pb if normalized else pb.inverse()
    for i in range(top + 1):
        if coeffs[i] and not (i and y.is_zero()):
            term = _theta_euler_power(mono, j - i) * coeffs[i] * y_pow
            if normalized:
                term = term * scale**i
            else:
                term = term * scale ** (j - i)
            total = total + term
        y_pow = y_pow * y
        if y_pow.is_exact_zero():
            break
    return ThetaResult(total, top)


def theta_k_j_continuous(f_stab: TruncatedSeries, j, params: OperatorParams) -> Padic:
    """``(p^b theta_k)^j`` of a p-stabilized series at ``j`` in ``Z/(p-1) x Z_p``."""
    return theta_continuous_result(f_stab, j, params).value


def theta_continuous_result(f_stab: TruncatedSeries, j, params: OperatorParams) -> ThetaResult:
    ring = params.ring
    if isinstance(j, int):
        j = WeightExponent.from_int(j, ring.base())
    mono = f_stab.to_monomial()
    if mono.is_zero():
        return ThetaResult(ring.zero(), 0)
    if not mono.is_stabilized():
        raise NotStabilized("continuous weights need a p-stabilized series")
    params.check_convergence()
    p = params.prime
    vmin = _min_coefficient_valuation(mono)
    target = params.precision + max(0, -vmin)
    top = truncation_index(params, vmin, target)
    if j.integer is not None and j.integer >= 0:
        top = min(top, j.integer)
    coeffs = c_coeffs(j, params.k, top + 1)
    # n^(j-i) = n^j * n^(-i)
    support = [(n, a) for n, a in enumerate(mono.coeffs) if n % p and not a.is_zero()]
    base = j.ring
    powers = [padic_power(Padic.from_rational(base, n), j) for n, _ in support]
    inverses = [Padic.from_rational(base, Fraction(1, n)) for n, _ in support]
    ratio = params.scaled_ratio()
    total = ring.zero()
    r_pow = ring.one()
    for i in range(top + 1):
        if i and ratio.is_zero():
            break
        part = ring.zero()
        for idx, (n, a) in enumerate(support):
            part = part + a * powers[idx]
            powers[idx] = powers[idx] * inverses[idx]
        if not coeffs[i].is_zero():
            total = total + coeffs[i] * r_pow * part
        r_pow = r_pow * ratio
    return ThetaResult(total, top)


# --------------------------------------------------------------------------
# limits


@dataclass(frozen=True, eq=False)
class LimitRow:
    m: int
    exponent: int
    value: Padic
    gap_valuation: object  # v(value - target), possibly inf


@dataclass(frozen=True, eq=False)
class LimitTable:
    j0: int
    target: Padic
    rows: list = field(default_factory=list)

    def converges(self) -> bool:
        """Gap valuations reach at least ``m + 1`` on every row."""
        return all(r.gap_valuation >= r.m + 1 for r in self.rows)


def limit_sequence(f: TruncatedSeries, j0: int, params: OperatorParams, m_max: int) -> LimitTable:
    """``(p^b theta_k)^(j0 + (p-1)p^m) f`` for ``m <= m_max`` and the stabilized target."""
    p = params.prime
    if m_max + 1 > params.precision:
        raise PrecisionExhausted(f"m_max = {m_max} needs precision above {m_max + 1}")
    if j0 < 0:
        raise ValueError("j0 must be nonnegative")
    target = theta_k_j_integer(p_stabilize(f), j0, params, normalized=True)
    rows = []
    for m in range(m_max + 1):
        e = j0 + (p - 1) * p**m
        value = theta_k_j_integer(f, e, params, normalized=True)
        gap = (value - target).valuation_lower_bound()
        rows.append(LimitRow(m, e, value, gap))
    return LimitTable(j0, target, rows)
