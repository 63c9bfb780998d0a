"""Integrality of ``Q(X) in 1 + X F[[X]]`` through a Frobenius lift.

For a lift ``phi`` with ``phi(X) in X O[[X]]`` and ``phi(X) = X^p mod p``,
``Q`` (with ``Q(0) = 1`` and integral linear coefficient) is integral iff
``phi(Q) / Q^p`` lies in ``1 + p X O[[X]]``, where ``phi`` acts on
coefficients through the arithmetic Frobenius.

Dividing by ``Q^p`` loses degrees in a truncated ring, so every verdict is
only claimed on the window of degrees ``<= order // p``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisViolated
from .padic import CoefficientRing, Padic, Qp
from .series import MONOMIAL_Q, TruncatedSeries


@dataclass(frozen=True, eq=False)
class FrobeniusLift:
    image_of_X: TruncatedSeries

    def __post_init__(self):
        phi = self.image_of_X.to_monomial()
        object.__setattr__(self, "image_of_X", phi)
        if not phi[0].is_zero():
            raise HypothesisViolated("phi(X) must have zero constant term")
        p = phi.prime
        for n, a in enumerate(phi.coeffs):
            if not a.is_integral():
                raise HypothesisViolated("phi(X) must have integral coefficients")
            expected = 1 if n == p else 0
            if not (a - expected).valuation_lower_bound() >= 1:
                raise HypothesisViolated("phi(X) must reduce to X^p mod p")

    @property
    def base_ring(self) -> CoefficientRing:
        return self.image_of_X.ring

    @property
    def order(self) -> int:
        return self.image_of_X.order

    def over(self, ring: CoefficientRing) -> "FrobeniusLift":
        """The same lift with coefficients read in ``ring``."""
        if ring == self.base_ring:
            return self
        if ring.prime != self.base_ring.prime:
            raise HypothesisViolated("lift and series live over different primes")
        coeffs = tuple(ring(c.coordinates()[0]) if not c.is_zero() else ring.zero()
                       for c in self.image_of_X.coeffs)
        return FrobeniusLift(TruncatedSeries(ring, MONOMIAL_Q, coeffs))

    def coefficient_frobenius(self, a: Padic) -> Padic:
        """Arithmetic Frobenius on coefficients: trivial on Q_p, conjugation on Q_p(sqrt d)."""
        ring = a.ring
        if ring.kind == "Qp":
            return a
        if ring.kind == "unramified":
            c0, c1 = a.coordinates()
            return Padic.from_coordinates(ring, [c0, -c1], a.prec)
        raise HypothesisViolated(f"no Frobenius on the ramified ring {ring.tag}")

    def apply(self, Q: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
        """``phi(Q) = sum sigma(a_n) phi(X)^n`` truncated at ``order``."""
        Q = Q.to_monomial()
        order = min(Q.order, self.order) if order is None else order
        phi = self.over(Q.ring).image_of_X.truncate(order)
        ring = Q.ring
        out = [ring.zero() for _ in range(order + 1)]
        power = TruncatedSeries.monomial(ring, 0, order)
        for n in range(order + 1):
            if n:
                power = power * phi
            a = Q[n]
            if a.is_zero():
                continue
            a = self.coefficient_frobenius(a)
            for m in range(n, order + 1):
                if not power[m].is_zero():
                    out[m] = out[m] + a * power[m]
        return TruncatedSeries(ring, MONOMIAL_Q, tuple(out))


def canonical_lift(p: int, order: int, ring: CoefficientRing | None = None) -> FrobeniusLift:
    """``phi(X) = (1 + X)^p - 1`` truncated at ``order``."""
    ring = ring or Qp(p)
    coeffs = [math.comb(p, n) if 1 <= n <= p else 0 for n in range(order + 1)]
    return FrobeniusLift(TruncatedSeries(ring, MONOMIAL_Q, tuple(coeffs)))


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """``1/f`` for a monomial series with nonzero constant term."""
    f = f.to_monomial()
    ring = f.ring
    inv0 = f[0].inverse()
    out = [inv0]
    for n in range(1, f.order + 1):
        acc = ring.zero()
        for i in range(1, n + 1):
            if not f[i].is_zero():
                acc = acc + f[i] * out[n - i]
        out.append(-acc * inv0)
    return TruncatedSeries(ring, MONOMIAL_Q, tuple(out))


def safe_window(order: int, p: int) -> int:
    return order // p


def _check_hypotheses(Q: TruncatedSeries):
    Q = Q.to_monomial()
    if Q[0] != 1:
        raise HypothesisViolated("Q(0) must equal 1")
    if Q.order >= 1 and not Q[1].is_integral():
        raise HypothesisViolated("the linear coefficient of Q must be integral")
    return Q


def frobenius_quotient(Q: TruncatedSeries, phi: FrobeniusLift) -> TruncatedSeries:
    """``phi(Q) / Q^p`` on the safe window."""
    Q = _check_hypotheses(Q)
    phi = phi.over(Q.ring)
    p = Q.prime
    w = safe_window(min(Q.order, phi.order), p)
    Qw = Q.truncate(w)
    num = phi.apply(Qw, w)
    den = Qw
    for _ in range(p - 1):
        den = den * Qw
    return num * series_inverse(den)


def dwork_criterion(Q: TruncatedSeries, phi: FrobeniusLift) -> bool:
    """True iff ``phi(Q)/Q^p - 1`` has integral-times-p coefficients on the window."""
    quot = frobenius_quotient(Q, phi)
    if not (quot[0] - 1).is_zero():
        return False
    return all(c.valuation_lower_bound() >= 1 for c in quot.coeffs[1:])


def brute_force_integral(Q: TruncatedSeries, window: int | None = None) -> bool:
    """Every retained coefficient (up to ``window`` if given) has valuation >= 0."""
    Q = Q.to_monomial()
    coeffs = Q.coeffs if window is None else Q.coeffs[: window + 1]
    return all(c.is_integral() for c in coeffs)


@dataclass(frozen=True)
class DworkVerdict:
    criterion: bool
    brute_force: bool
    safe_window: int

    @property
    def agree(self) -> bool:
        return self.criterion == self.brute_force

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "brute_force": self.brute_force, "safe_window": self.safe_window}


def dwork_verdict(Q: TruncatedSeries, phi: FrobeniusLift | None = None) -> DworkVerdict:
    p = Q.prime
    phi = phi or canonical_lift(p, Q.order, Q.ring)
    w = safe_window(min(Q.order, phi.order), p)
    return DworkVerdict(dwork_criterion(Q, phi), brute_force_integral(Q, w), w)


# --------------------------------------------------------------------------
# random test series


def exp_series(ring: CoefficientRing, order: int, scale=1) -> TruncatedSeries:
    """Truncated ``exp(scale * X)``."""
    coeffs = [Fraction(scale) ** n / math.factorial(n) for n in range(order + 1)]
    return TruncatedSeries(ring, MONOMIAL_Q, tuple(coeffs))


def artin_hasse_series(ring: CoefficientRing, order: int) -> TruncatedSeries:
    """``exp(sum_k X^(p^k) / p^k)``: integral although built from exp."""
    p = ring.prime
    arg = [Fraction(0)] * (order + 1)
    q = 1
    while q <= order:
        arg[q] = Fraction(1, q)
        q *= p
    # exp of a rational series by the recursion n e_n = sum k a_k e_(n-k)
    e = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        e[n] = sum(k * arg[k] * e[n - k] for k in range(1, n + 1)) / n
    return TruncatedSeries(ring, MONOMIAL_Q, tuple(e))


def random_series_for_dwork(rng: random.Random, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """A mix of integral series, series with one deep negative coefficient, and exp-type series."""
    p = ring.prime
    kind = rng.choice(["integral", "integral", "deep", "deep", "exp", "artin_hasse", "product"])
    bound = p**4
    if kind == "exp":
        scale = rng.choice([1, p, -1, 2])
        return exp_series(ring, order, scale)
    if kind == "artin_hasse":
        return artin_hasse_series(ring, order)
    coeffs = [Fraction(1)] + [Fraction(rng.randrange(-bound, bound + 1)) for _ in range(order)]
    if kind == "deep":
        n = rng.randrange(2, max(3, order // p + 1))
        coeffs[n] = Fraction(rng.randrange(1, bound), p ** rng.randrange(1, 4))
    Q = TruncatedSeries(ring, MONOMIAL_Q, tuple(coeffs))
    if kind == "product":
        Q = Q * artin_hasse_series(ring, order)
    return Q
