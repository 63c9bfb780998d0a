"""Truncated power series over a p-adic coefficient ring.

A series keeps coefficients of degrees ``0..order`` (so ``order + 1`` of
them) either in the basis ``(q - 1)**n`` or in the monomial basis ``q**n``.
The Serre-Tate variable ``T`` is handled by the same class: its local
parameter ``T - 1`` plays the role of ``q - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BasisMismatch, NotStabilized, RingMismatch, RingPromotionFailure
from .padic import CoefficientRing, Padic

Q_MINUS_ONE = "q_minus_1"
MONOMIAL_Q = "monomial_q"
BASES = (Q_MINUS_ONE, MONOMIAL_Q)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    ring: CoefficientRing
    basis: str
    coeffs: tuple

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        if not self.coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        coeffs = tuple(self.ring(c) if not isinstance(c, Padic) else c._promote(self.ring)
                       for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    # constructors -----------------------------------------------------
    @classmethod
    def from_values(cls, ring, values: Sequence, basis: str = MONOMIAL_Q) -> "TruncatedSeries":
        return cls(ring, basis, tuple(values))

    @classmethod
    def zero(cls, ring, order: int, basis: str = MONOMIAL_Q) -> "TruncatedSeries":
        return cls(ring, basis, (ring.zero(),) * (order + 1))

    @classmethod
    def monomial(cls, ring, n: int, order: int, coeff=1) -> "TruncatedSeries":
        """``coeff * q**n`` in the monomial basis."""
        values = [0] * (order + 1)
        values[n] = coeff
        return cls(ring, MONOMIAL_Q, tuple(values))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def prime(self) -> int:
        return self.ring.prime

    def __getitem__(self, n: int) -> Padic:
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _check(self, other: "TruncatedSeries"):
        if self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.tag} vs {other.ring.tag}")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        n = min(self.order, other.order) + 1
        return TruncatedSeries(self.ring, self.basis,
                               tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __neg__(self):
        return TruncatedSeries(self.ring, self.basis, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = self.ring(c)
        return TruncatedSeries(self.ring, self.basis, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        order = min(self.order, other.order)
        out = [self.ring.zero() for _ in range(order + 1)]
        for i in range(order + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ring, self.basis, tuple(out))

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.basis == other.basis and self.ring == other.ring
                and self.order == other.order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.basis, self.coeffs[: order + 1])

    # change of ring ---------------------------------------------------
    def promote(self, ring: CoefficientRing) -> "TruncatedSeries":
        """Move a Q_p series into an extension ring (explicit, never implicit)."""
        if ring == self.ring:
            return self
        try:
            coeffs = tuple(c._promote(ring) for c in self.coeffs)
        except RingMismatch as exc:
            raise RingPromotionFailure(str(exc)) from exc
        return TruncatedSeries(ring, self.basis, coeffs)

    def demote(self, ring: CoefficientRing) -> "TruncatedSeries":
        """Move back to Q_p; every coefficient must have vanishing higher coordinates."""
        if ring == self.ring:
            return self
        if ring.kind != "Qp" or ring.prime != self.prime or ring.precision != self.ring.precision:
            raise RingPromotionFailure(f"cannot demote {self.ring.tag} to {ring.tag}")
        out = []
        for c in self.coeffs:
            if c.is_zero():
                out.append(Padic._zero(ring, c.prec))
                continue
            coords = c.coordinates()
            # higher coordinates must vanish to the precision of the element
            for i, x in enumerate(coords[1:], start=1):
                if x != 0 and Padic.from_rational(c.ring, x).valuation() + Fraction(i, c.ring.ramification) < c.prec:
                    raise RingPromotionFailure(f"coefficient {c!r} is not in Q_p")
            out.append(Padic.from_rational(ring, coords[0], prec=math.floor(c.prec)))
        return TruncatedSeries(ring, self.basis, tuple(out))

    # bases ------------------------------------------------------------
    def to_monomial(self) -> "TruncatedSeries":
        if self.basis == MONOMIAL_Q:
            return self
        return TruncatedSeries(self.ring, MONOMIAL_Q, _change_basis(self.coeffs, -1, self.ring))

    def to_qminus1(self) -> "TruncatedSeries":
        if self.basis == Q_MINUS_ONE:
            return self
        return TruncatedSeries(self.ring, Q_MINUS_ONE, _change_basis(self.coeffs, 1, self.ring))

    def in_basis(self, basis: str) -> "TruncatedSeries":
        return self.to_monomial() if basis == MONOMIAL_Q else self.to_qminus1()

    # operators --------------------------------------------------------
    def euler_derivative(self) -> "TruncatedSeries":
        """``q d/dq``."""
        c = self.coeffs
        if self.basis == MONOMIAL_Q:
            return TruncatedSeries(self.ring, self.basis, tuple(a * n for n, a in enumerate(c)))
        # q d/dq (q-1)^n = n (q-1)^(n-1) + n (q-1)^n
        out = []
        for m in range(self.order + 1):
            term = c[m] * m
            if m < self.order:
                term = term + c[m + 1] * (m + 1)
            out.append(term)
        return TruncatedSeries(self.ring, self.basis, tuple(out))

    def theta_constant_term(self) -> Padic:
        """Value at q = 1, i.e. the constant term in the (q - 1) basis."""
        if self.basis == Q_MINUS_ONE:
            return self.coeffs[0]
        total = self.ring.zero()
        for a in self.coeffs:
            total = total + a
        return total

    def substitute_root_of_unity(self, j: int, promote: bool = False) -> "TruncatedSeries":
        """``q -> zeta_p**j * q``; the ring must be cyclotomic (or ``promote``)."""
        f = self
        if f.ring.kind != "cyclotomic":
            if not promote:
                raise RingPromotionFailure("root-of-unity substitution needs the cyclotomic ring")
            f = f.promote(_cyclotomic_of(f.ring))
        mono = f.to_monomial()
        zeta = f.ring.zeta()
        zj = zeta ** (j % f.prime)
        out, w = [], f.ring.one()
        for a in mono.coeffs:
            out.append(a * w)
            w = w * zj
        res = TruncatedSeries(f.ring, MONOMIAL_Q, tuple(out))
        return res.in_basis(self.basis)

    def is_stabilized(self) -> bool:
        mono = self.to_monomial()
        p = self.prime
        return all(mono.coeffs[n].is_zero() for n in range(0, mono.order + 1, p))

    def formal_primitive(self) -> "TruncatedSeries":
        """``sum a_n / n q**n`` for a stabilized monomial series."""
        if self.basis != MONOMIAL_Q:
            raise BasisMismatch("formal_primitive expects the monomial basis")
        if not self.is_stabilized():
            raise NotStabilized("coefficients at p-divisible indices must vanish")
        out = [self.coeffs[0]]
        out += [a / n for n, a in enumerate(self.coeffs) if n > 0]
        return TruncatedSeries(self.ring, MONOMIAL_Q, tuple(out))

    def __repr__(self):
        body = ", ".join(repr(c) for c in self.coeffs)
        return f"TruncatedSeries({self.ring.tag}, {self.basis}, [{body}])"


def _cyclotomic_of(ring: CoefficientRing) -> CoefficientRing:
    if ring.kind != "Qp":
        raise RingPromotionFailure(f"cannot promote {ring.tag} to the cyclotomic ring")
    return CoefficientRing("cyclotomic", ring.prime, ring.precision)


def _change_basis(coeffs, sign: int, ring) -> tuple:
    # sign = -1: (q-1)-basis -> monomial, b_m = sum_n a_n C(n, m) (-1)^(n-m)
    # sign = +1: monomial -> (q-1)-basis, a_n = sum_m b_m C(m, n)
    d = len(coeffs) - 1
    out = []
    for m in range(d + 1):
        total = ring.zero()
        for n in range(m, d + 1):
            a = coeffs[n]
            if a.is_zero():
                continue
            c = math.comb(n, m)
            if sign < 0 and (n - m) % 2:
                c = -c
            total = total + a * c
        out.append(total)
    return tuple(out)
