"""Fixed-precision arithmetic in Q_p and a few small extensions of it.

Elements are stored as ``p**shift * sum(coeffs[i] * alpha**i)`` known modulo
``p**prec * O`` where ``alpha`` is the power-basis generator of the ring:

* ``Qp``: degree 1, ``alpha = 1``;
* ``unramified``: ``alpha**2 = d`` with ``d`` a non-square mod p;
* ``ramified``: ``alpha**2 = D`` with ``v_p(D) = 1`` (Eisenstein), so
  ``alpha`` is a uniformizer and valuations live in ``(1/2)Z``;
* ``cyclotomic``: ``alpha = zeta_p - 1``, root of ``Phi_p(1 + x)``, degree
  ``p - 1`` and totally ramified.

Relative precision is capped at the ring precision ``N``; absolute
precision ``prec`` is tracked per element and only ever decreases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DivisionByZero,
    NotAUnit,
    OutOfConvergenceDomain,
    RingMismatch,
)

INF = math.inf
DEFAULT_PRECISION = 64

_KINDS = ("Qp", "unramified", "ramified", "cyclotomic")


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("vp(0) is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(n: int, p: int) -> int:
    # Legendre's formula
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def _floor(x) -> int:
    return math.floor(x) if x != INF else INF


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class CoefficientRing:
    """A p-adic coefficient ring at fixed relative precision.

    ``param`` is the non-residue ``d`` for ``unramified`` and the radicand
    ``D`` (with ``v_p(D) = 1``) for ``ramified``; it is unused otherwise.
    """

    kind: str
    prime: int
    precision: int = DEFAULT_PRECISION
    param: int = 0
    modulus: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = self.prime
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if self.kind == "Qp":
            mod = (0, 1)
        elif self.kind == "unramified":
            d = self.param
            if p == 2:
                raise ValueError("x^2 - d never defines an unramified extension of Q_2")
            if d % p == 0 or pow(d, (p - 1) // 2, p) == 1:
                raise ValueError(f"{d} is a square mod {p} (or divisible by it)")
            mod = (-d, 0, 1)
        elif self.kind == "ramified":
            D = self.param
            if D == 0 or vp(D, p) != 1:
                raise ValueError(f"x^2 - {D} is not Eisenstein at {p}")
            mod = (-D, 0, 1)
        else:
            # Phi_p(1 + x) = sum_{i=0}^{p-1} C(p, i+1) x^i
            mod = tuple(math.comb(p, i + 1) for i in range(p))
        object.__setattr__(self, "modulus", mod)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def ramification(self) -> int:
        return self.degree if self.kind in ("ramified", "cyclotomic") else 1

    @property
    def tag(self) -> str:
        if self.kind in ("unramified", "ramified"):
            return f"{self.kind}({self.param})"
        return self.kind

    def to_json(self):
        if self.kind == "unramified":
            return {"kind": "unramified", "d": self.param}
        if self.kind == "ramified":
            return {"kind": "ramified", "D": self.param}
        return self.kind

    def base(self) -> "CoefficientRing":
        return Qp(self.prime, self.precision)

    # element constructors
    def __call__(self, value=0, prec=None) -> "Padic":
        if isinstance(value, Padic):
            return value._promote(self)
        if isinstance(value, (list, tuple)):
            return Padic.from_coordinates(self, value, prec)
        if isinstance(value, str):
            value = Fraction(value)
        return Padic.from_rational(self, value, prec)

    def zero(self) -> "Padic":
        return Padic._zero(self, INF)

    def one(self) -> "Padic":
        return Padic.from_rational(self, 1)

    def gen(self) -> "Padic":
        """The power-basis generator (sqrt(d), sqrt(D) or zeta_p - 1)."""
        if self.degree == 1:
            return self.one()
        coords = [0] * self.degree
        coords[1] = 1
        return Padic.from_coordinates(self, coords)

    def zeta(self) -> "Padic":
        if self.kind != "cyclotomic":
            raise RingMismatch("zeta_p lives in the cyclotomic ring")
        return self.one() + self.gen()


def Qp(p: int, precision: int = DEFAULT_PRECISION) -> CoefficientRing:
    return CoefficientRing("Qp", p, precision)


def unramified_quadratic(p: int, d: int, precision: int = DEFAULT_PRECISION) -> CoefficientRing:
    return CoefficientRing("unramified", p, precision, d)


def ramified_quadratic(p: int, D: int, precision: int = DEFAULT_PRECISION) -> CoefficientRing:
    return CoefficientRing("ramified", p, precision, D)


def cyclotomic(p: int, precision: int = DEFAULT_PRECISION) -> CoefficientRing:
    return CoefficientRing("cyclotomic", p, precision)


def smallest_nonresidue(p: int) -> int:
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise ValueError(f"no quadratic non-residue mod {p}")


def _polymulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int]) -> list[int]:
    n = len(modulus) - 1
    if n == 1:
        return [a[0] * b[0]]
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    # modulus is monic: alpha^n = -sum(modulus[i] alpha^i)
    for deg in range(2 * n - 2, n - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for i in range(n):
                prod[deg - n + i] -= c * modulus[i]
    return prod[:n]


def _frac_inverse_mod(x: Fraction, p: int, k: int) -> int:
    """Image of a p-integral rational in Z/p^k."""
    return x.numerator * pow(x.denominator, -1, p**k) % p**k


def _solve_fractions(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


class Padic:
    """An element of a :class:`CoefficientRing`. Immutable."""

    __slots__ = ("ring", "coeffs", "shift", "prec")

    def __init__(self, ring, coeffs, shift, prec):
        # raw constructor, use the classmethods
        self.ring = ring
        self.coeffs = coeffs
        self.shift = shift
        self.prec = prec

    # construction -----------------------------------------------------
    @classmethod
    def _zero(cls, ring, prec):
        return cls(ring, (0,) * ring.degree, 0, prec)

    @classmethod
    def _make(cls, ring, coeffs, shift, prec):
        p = ring.prime
        if prec != INF:
            prec = int(prec)
            rel = prec - shift
            if rel <= 0:
                return cls._zero(ring, prec)
            mod = p**rel
            coeffs = [c % mod for c in coeffs]
        if not any(coeffs):
            return cls._zero(ring, prec)
        while all(c % p == 0 for c in coeffs):
            coeffs = [c // p for c in coeffs]
            shift += 1
        x = cls(ring, tuple(coeffs), shift, prec)
        cap = math.floor(x._unit_valuation()) + shift + ring.precision
        if prec == INF or prec > cap:
            mod = p ** (cap - shift)
            x.coeffs = tuple(c % mod for c in coeffs)
            x.prec = cap
        return x

    @classmethod
    def from_rational(cls, ring, value, prec=None) -> "Padic":
        value = Fraction(value)
        if value == 0:
            return cls._zero(ring, INF if prec is None else prec)
        coords = [value] + [Fraction(0)] * (ring.degree - 1)
        return cls.from_coordinates(ring, coords, prec)

    @classmethod
    def from_coordinates(cls, ring, coords, prec=None) -> "Padic":
        """Element with the given rational coordinates in the power basis.

        ``prec`` defaults to the ring's relative-precision cap.
        """
        p = ring.prime
        coords = [Fraction(c) for c in coords]
        if len(coords) != ring.degree:
            raise ValueError(f"expected {ring.degree} coordinates, got {len(coords)}")
        nz = [c for c in coords if c != 0]
        if not nz:
            return cls._zero(ring, INF if prec is None else prec)
        s = min(vp(c.numerator, p) - vp(c.denominator, p) for c in nz)
        if prec is None:
            # enough room for the cap to bite
            prec = s + ring.precision + 1
        k = prec - s
        if k <= 0:
            return cls._zero(ring, prec)
        scaled = [c / Fraction(p) ** s for c in coords]
        coeffs = [_frac_inverse_mod(c, p, k) for c in scaled]
        return cls._make(ring, coeffs, s, prec)

    @classmethod
    def from_digits(cls, ring, digits, val, prec=None) -> "Padic":
        """Inverse of :meth:`digits` for Q_p: ``p**val * sum(d_i p^i)``."""
        p = ring.prime
        u = sum(d * p**i for i, d in enumerate(digits))
        if prec is None:
            prec = val + len(digits)
        return cls._make(ring, [u] + [0] * (ring.degree - 1), val, prec)

    # basic queries ----------------------------------------------------
    @property
    def prime(self) -> int:
        return self.ring.prime

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_exact_zero(self) -> bool:
        return self.is_zero() and self.prec == INF

    def _unit_valuation(self):
        # valuation of sum(coeffs[i] alpha^i), ignoring the p**shift factor
        p, e = self.ring.prime, self.ring.ramification
        if e == 1:
            return min(vp(c, p) for c in self.coeffs if c)
        return min(Fraction(vp(c, p) * e + i, e) for i, c in enumerate(self.coeffs) if c)

    def valuation(self):
        """v_p(self); ``math.inf`` for zero. Fractional in ramified rings."""
        if self.is_zero():
            return INF
        v = self.shift + self._unit_valuation()
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        return v

    def valuation_lower_bound(self):
        """v_p(self) for nonzero elements, the absolute precision for zero."""
        return self.prec if self.is_zero() else self.valuation()

    def relative_precision(self):
        if self.is_zero():
            return 0
        return self.prec - self.valuation()

    def absolute_value(self):
        """|x| normalized by |p| = 1/p (a float when v is fractional)."""
        v = self.valuation()
        if v == INF:
            return 0
        if isinstance(v, int):
            return Fraction(1, self.prime**v) if v >= 0 else Fraction(self.prime ** (-v))
        return float(self.prime) ** (-float(v))

    def is_unit(self) -> bool:
        return not self.is_zero() and self.valuation() == 0

    def is_integral(self) -> bool:
        return self.is_zero() or self.valuation() >= 0

    def coordinates(self) -> list[Fraction]:
        """Rational coordinates of the stored representative."""
        scale = Fraction(self.prime) ** self.shift
        return [c * scale for c in self.coeffs]

    def residue(self) -> tuple[int, ...]:
        """Reduction mod p of the coordinates (needs an integral element)."""
        if not self.is_integral():
            raise NotAUnit("residue of a non-integral element")
        p = self.prime
        if self.is_zero():
            return (0,) * self.ring.degree
        return tuple(int(c) % p if c.denominator == 1 else 0 for c in self.coordinates())

    def lift(self) -> int:
        """Integer representative in [0, p^prec) of an integral Q_p element."""
        self._require_Qp()
        if self.shift < 0:
            raise NotAUnit("lift of a non-integral element")
        if self.is_zero():
            return 0
        return self.coeffs[0] * self.prime**self.shift

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, least significant first (Q_p only)."""
        self._require_Qp()
        if self.is_zero():
            return []
        u, p = self.coeffs[0], self.prime
        out = []
        for _ in range(self.prec - self.shift):
            u, d = divmod(u, p)
            out.append(d)
        return out

    def with_precision(self, prec) -> "Padic":
        """Reduce absolute precision (never raises it)."""
        if prec >= self.prec:
            return self
        return Padic._make(self.ring, list(self.coeffs), self.shift, prec)

    def _require_Qp(self):
        if self.ring.degree != 1:
            raise RingMismatch(f"operation needs a Q_p element, got {self.ring.tag}")

    # coercion ---------------------------------------------------------
    def _promote(self, ring) -> "Padic":
        if ring == self.ring:
            return self
        if ring.prime != self.ring.prime or ring.precision != self.ring.precision:
            raise RingMismatch(f"cannot move {self.ring} into {ring}")
        if self.ring.kind != "Qp":
            raise RingMismatch(f"cannot move {self.ring.tag} into {ring.tag}")
        coeffs = (self.coeffs[0],) + (0,) * (ring.degree - 1)
        return Padic(ring, coeffs, self.shift, self.prec)

    def _coerce_pair(self, other):
        if isinstance(other, Padic):
            if other.ring == self.ring:
                return self, other
            if self.ring.kind == "Qp":
                return self._promote(other.ring), other
            if other.ring.kind == "Qp":
                return self, other._promote(self.ring)
            raise RingMismatch(f"{self.ring.tag} vs {other.ring.tag}")
        if isinstance(other, (int, Fraction)):
            return self, Padic.from_rational(self.ring, other)
        return NotImplemented

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce_pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        prec = min(a.prec, b.prec)
        if a.is_zero():
            return b if b.prec <= prec else b.with_precision(prec)
        if b.is_zero():
            return a if a.prec <= prec else a.with_precision(prec)
        p = a.ring.prime
        s = min(a.shift, b.shift)
        fa, fb = p ** (a.shift - s), p ** (b.shift - s)
        coeffs = [x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)]
        return Padic._make(a.ring, coeffs, s, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return Padic._make(self.ring, [-c for c in self.coeffs], self.shift, self.prec)

    def __sub__(self, other):
        pair = self._coerce_pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce_pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        va, vb = a.valuation_lower_bound(), b.valuation_lower_bound()
        prec = _floor(min(va + b.prec, vb + a.prec))
        if a.is_zero() or b.is_zero():
            return Padic._zero(a.ring, prec)
        coeffs = _polymulmod(a.coeffs, b.coeffs, a.ring.modulus)
        return Padic._make(a.ring, coeffs, a.shift + b.shift, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Padic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        ring, p = self.ring, self.ring.prime
        v = self.valuation()
        prec = _floor(self.prec - 2 * v)
        if ring.degree == 1:
            rel = self.prec - self.shift
            u = pow(self.coeffs[0], -1, p**rel)
            return Padic._make(ring, [u], -self.shift, prec)
        # exact inverse of the stored representative via its multiplication matrix
        n = ring.degree
        cols = []
        basis = [0] * n
        for j in range(n):
            basis[j] = 1
            cols.append(_polymulmod(self.coeffs, basis, ring.modulus))
            basis[j] = 0
        matrix = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        x = _solve_fractions(matrix, rhs)
        scale = Fraction(p) ** (-self.shift)
        return Padic.from_coordinates(ring, [c * scale for c in x], prec)

    def __truediv__(self, other):
        if isinstance(other, int) and other != 0 and self.ring.degree == 1:
            return self * Padic.from_rational(self.ring, Fraction(1, other))
        pair = self._coerce_pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce_pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.ring.one()
        if self.is_zero():
            return Padic._zero(self.ring, self.prec * n if self.prec > 0 else self.prec)
        if self.ring.degree == 1:
            p = self.ring.prime
            rel = self.prec - self.shift
            u = pow(self.coeffs[0], n, p**rel)
            shift = self.shift * n
            return Padic._make(self.ring, [u], shift, shift + rel)
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        pair = self._coerce_pair(other) if isinstance(other, (Padic, int, Fraction)) else NotImplemented
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        # equal when they agree to N digits or to the precision actually known
        return (a - b).valuation_lower_bound() >= min(a.ring.precision, a.prec, b.prec)

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"O({self.prime}^{self.prec})" if self.prec != INF else "0"
        coords = ", ".join(str(c) for c in self.coordinates())
        if self.ring.degree == 1:
            return f"{coords} + O({self.prime}^{self.prec})"
        return f"[{coords}] + O({self.prime}^{self.prec}) in {self.ring.tag}"


# --------------------------------------------------------------------------
# analytic functions


def teichmuller(u: Padic) -> Padic:
    """The (p-1)-st root of unity congruent to ``u`` mod p.

    Computed by iterating ``x -> x**p`` from the residue until it stabilizes.
    """
    u._require_Qp()
    if not u.is_unit():
        raise NotAUnit(f"teichmuller needs a unit of Z_p, got {u!r}")
    ring = u.ring
    p, N = ring.prime, ring.precision
    mod = p**N
    x = u.coeffs[0] % p
    for _ in range(N + 1):
        nxt = pow(x, p, mod)
        if nxt == x:
            break
        x = nxt
    return Padic._make(ring, [x], 0, N)


def _exp_threshold(p: int):
    return Fraction(2) if p == 2 else Fraction(1, p - 1)


def padic_exp(x: Padic) -> Padic:
    """exp(x) for v(x) > 1/(p-1) (v(x) >= 2 when p = 2)."""
    ring = x.ring
    p, N = ring.prime, ring.precision
    if x.is_zero():
        return ring.one().with_precision(min(x.prec, N))
    v = Fraction(x.valuation())
    bad = v < 2 if p == 2 else v <= Fraction(1, p - 1)
    if bad:
        raise OutOfConvergenceDomain(f"exp needs v(x) > 1/(p-1), got v = {v}")
    target = min(x.prec, N)
    delta = v - Fraction(1, p - 1)
    result = term = ring.one()
    n = 1
    # v(x^n/n!) >= n*delta + 1/(p-1), increasing in n
    while n * delta + Fraction(1, p - 1) < target:
        term = term * x / n
        result = result + term
        n += 1
    return result.with_precision(target)


def padic_log(u: Padic) -> Padic:
    """log(u) for v(u - 1) >= 1."""
    ring = u.ring
    y = u - 1
    if y.is_zero():
        return Padic._zero(ring, y.prec)
    v = y.valuation()
    if v < 1:
        raise OutOfConvergenceDomain(f"log needs v(u - 1) >= 1, got {v}")
    target = _floor(min(y.prec, v + ring.precision))
    p = ring.prime
    result = None
    power = ring.one()
    n = 1
    # v(y^n / n) >= n*v - floor(log_p n), nondecreasing since v >= 1
    while True:
        power = power * y
        term = power / n
        result = term if n == 1 else (result + term if n % 2 else result - term)
        n += 1
        logn = 0
        q = p
        while q <= n:
            q *= p
            logn += 1
        if n * v - logn >= target:
            break
    return result.with_precision(target)


# --------------------------------------------------------------------------
# weights in Z/(p-1) x Z_p


@dataclass(frozen=True, eq=False)
class WeightExponent:
    """An exponent ``j`` in ``Z/(p-1) x Z_p``.

    ``integer`` is set when ``j`` came from a rational integer through the
    diagonal embedding.
    """

    residue: int
    padic_part: Padic
    integer: int | None = None

    def __post_init__(self):
        self.padic_part._require_Qp()
        if not self.padic_part.is_integral():
            raise ValueError("p-adic part of a weight must lie in Z_p")
        object.__setattr__(self, "residue", self.residue % (self.prime - 1))

    @property
    def prime(self) -> int:
        return self.padic_part.prime

    @property
    def ring(self) -> CoefficientRing:
        return self.padic_part.ring

    @classmethod
    def from_int(cls, j: int, ring: CoefficientRing) -> "WeightExponent":
        return cls(j % (ring.prime - 1), Padic.from_rational(ring, j), j)

    @classmethod
    def from_digits(cls, residue: int, digits: Sequence[int], ring: CoefficientRing) -> "WeightExponent":
        p = ring.prime
        value = sum(d * p**i for i, d in enumerate(digits))
        return cls(residue, Padic._make(ring, [value], 0, len(digits)))

    def is_integer(self) -> bool:
        return self.integer is not None

    def _lift(self, other) -> "WeightExponent":
        if isinstance(other, int):
            return WeightExponent.from_int(other, self.ring)
        return other

    def __add__(self, other):
        other = self._lift(other)
        integer = None
        if self.integer is not None and other.integer is not None:
            integer = self.integer + other.integer
        return WeightExponent(self.residue + other.residue, self.padic_part + other.padic_part, integer)

    __radd__ = __add__

    def __neg__(self):
        integer = None if self.integer is None else -self.integer
        return WeightExponent(-self.residue, -self.padic_part, integer)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        integer = None if self.integer is None else self.integer * n
        return WeightExponent(self.residue * n, self.padic_part * n, integer)

    __rmul__ = __mul__

    def congruent(self, other, m: int) -> bool:
        """``self == other`` modulo ``(p-1) p^m``."""
        other = self._lift(other)
        if self.residue != other.residue:
            return False
        diff = self.padic_part - other.padic_part
        return diff.valuation_lower_bound() >= m

    def approximant(self, m: int) -> int:
        """The integer in ``[0, (p-1)p^m)`` congruent to ``self`` mod ``(p-1)p^m``."""
        p = self.prime
        if self.padic_part.prec < m:
            raise ValueError(f"p-adic part known only to precision {self.padic_part.prec}")
        a = self.padic_part.lift() % p**m if m else 0
        pm = p**m
        # CRT: x = a mod p^m, x = r mod (p-1)
        t = ((self.residue - a) * pow(pm, -1, p - 1)) % (p - 1) if p > 2 else 0
        return a + pm * t

    def padic_digits(self, n: int | None = None) -> list[int]:
        x = self.padic_part
        n = x.prec if n is None else n
        value = x.lift() if not x.is_zero() else 0
        p = self.prime
        return [(value // p**i) % p for i in range(n)]

    def __eq__(self, other):
        if isinstance(other, int):
            other = WeightExponent.from_int(other, self.ring)
        if not isinstance(other, WeightExponent):
            return NotImplemented
        return self.residue == other.residue and self.padic_part == other.padic_part

    __hash__ = None

    def __repr__(self):
        if self.integer is not None:
            return f"WeightExponent({self.integer})"
        return f"WeightExponent(residue={self.residue}, padic={self.padic_part!r})"


def padic_power(n, j) -> Padic:
    """``n**j`` for a unit ``n`` of Z_p and ``j`` in ``Z/(p-1) x Z_p``.

    Computed as ``omega(n)**residue * exp(padic_part * log(<n>))`` with
    ``<n> = n / omega(n)``.
    """
    if isinstance(j, int):
        ring = n.ring if isinstance(n, Padic) else None
        if ring is None:
            raise TypeError("padic_power needs a Padic base when j is an int")
        j = WeightExponent.from_int(j, ring)
    if not isinstance(n, Padic):
        n = Padic.from_rational(j.ring, n)
    n._require_Qp()
    if not n.is_unit():
        raise NotAUnit(f"padic_power needs a unit, got {n!r}")
    w = teichmuller(n)
    principal = n / w
    exponent = j.padic_part * padic_log(principal)
    return (w ** j.residue) * padic_exp(exponent)


def unit_powers(n: Padic, j: WeightExponent, count: int) -> Iterator[Padic]:
    """Yield ``n**(j - i)`` for ``i = 0, 1, ..., count - 1``."""
    value = padic_power(n, j)
    inv = n.inverse()
    for _ in range(count):
        yield value
        value = value * inv
