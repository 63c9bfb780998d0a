"""Exact rational functions in ``z_dR`` and ``z_bar`` and differential operators.

``z_bar`` is treated as a constant for ``d/dz_dR`` and transforms under
Mobius substitution exactly like ``z_dR``. Arithmetic is delegated to
sympy's sparse fraction field over QQ; on top of it every expression is
kept in a canonical form (reduced, denominator with leading coefficient 1
in graded-lex order with ``z_dR > z_bar``), so equality is syntactic.

Matrices are ``((a, b), (c, d))`` and act by ``z -> (d z + b) / (c z + a)``.
With this convention substituting ``g1`` and then ``g2`` equals
substituting ``g2 @ g1``.

Operators pretty-print with the grammar::

    operator := "0" | term (" + " term)*
    term     := "(" expr ")" | "(" expr ")*D" | "(" expr ")*D^" int

terms ordered by decreasing order of ``D = d/dz_dR``; ``expr`` is
``numerator`` or ``numerator/denominator`` in sympy's polynomial syntax.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable

from sympy import QQ
from sympy.polys.fields import field
from sympy.polys.orderings import grlex

from .errors import SingularMatrix

_FIELD, _ZDR, _ZBAR = field("zdR,zbar", QQ, grlex)
_RING = _FIELD.ring
_X, _Y = _RING.gens


def _canonical(num, den, reduced=False):
    if not den:
        raise ZeroDivisionError("rational expression with zero denominator")
    if not reduced:
        f = _FIELD.new(num, den)  # cancels the gcd
        num, den = f.numer, f.denom
    lc = den.LC
    if lc != 1:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


class RationalExpr:
    """A reduced fraction of polynomials in ``z_dR, z_bar`` over QQ."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, _reduced=False):
        if not hasattr(num, "ring"):
            num = _RING(QQ(Fraction(num).numerator, Fraction(num).denominator))
        if not hasattr(den, "ring"):
            den = _RING(QQ(Fraction(den).numerator, Fraction(den).denominator))
        self.num, self.den = _canonical(num, den, _reduced)

    @classmethod
    def _wrap(cls, f) -> "RationalExpr":
        # field arithmetic already returns reduced fractions
        return cls(f.numer, f.denom, _reduced=True)

    @classmethod
    def zdR(cls) -> "RationalExpr":
        return cls(_X)

    @classmethod
    def zbar(cls) -> "RationalExpr":
        return cls(_Y)

    @classmethod
    def parse(cls, text: str) -> "RationalExpr":
        from sympy import sympify, Symbol
        expr = sympify(text, locals={"zdR": Symbol("zdR"), "zbar": Symbol("zbar")})
        return cls._wrap(_FIELD.from_expr(expr))

    def _frac(self):
        return _FIELD.new(self.num, self.den)

    @staticmethod
    def _lift(x) -> "RationalExpr":
        return x if isinstance(x, RationalExpr) else RationalExpr(x)

    def __add__(self, other):
        return RationalExpr._wrap(self._frac() + RationalExpr._lift(other)._frac())

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RationalExpr._lift(other))

    def __rsub__(self, other):
        return RationalExpr._lift(other) - self

    def __mul__(self, other):
        return RationalExpr._wrap(self._frac() * RationalExpr._lift(other)._frac())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalExpr._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational expression")
        return RationalExpr._wrap(self._frac() / other._frac())

    def __rtruediv__(self, other):
        return RationalExpr._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalExpr(1) / (self ** (-n))
        return RationalExpr(self.num**n, self.den**n, _reduced=True)

    def is_zero(self) -> bool:
        return not self.num

    def diff_zdR(self) -> "RationalExpr":
        """``d/dz_dR`` with ``z_bar`` constant."""
        return RationalExpr._wrap(self._frac().diff(_ZDR))

    def diff_zbar(self) -> "RationalExpr":
        return RationalExpr._wrap(self._frac().diff(_ZBAR))

    def mobius_substitute(self, gamma, both_vars: bool = True) -> "RationalExpr":
        """Substitute ``z_dR -> (d z_dR + b)/(c z_dR + a)`` (and ``z_bar`` if asked)."""
        return RationalExpr(*self._mobius_parts(gamma, both_vars))

    def _mobius_parts(self, gamma, both_vars=True):
        # unreduced numerator and denominator of the substituted expression
        (a, b), (c, d) = _check_matrix(gamma)
        degs = [max(self.num.degrees()[i], self.den.degrees()[i], 0) for i in (0, 1)]
        if not both_vars:
            degs[1] = 0
        # homogenize: P(X, Y) (c z + a)^m (c w + a)^n is a polynomial
        top_x = _powers(d * _X + b, degs[0])
        bot_x = _powers(c * _X + a, degs[0])
        top_y = _powers(d * _Y + b, degs[1])
        bot_y = _powers(c * _Y + a, degs[1])

        def homog(poly):
            out = _RING.zero
            for (ex, ey), coeff in poly.terms():
                term = top_x[ex] * bot_x[degs[0] - ex]
                if both_vars:
                    term = term * top_y[ey] * bot_y[degs[1] - ey]
                else:
                    term = term * _Y**ey
                out += term * coeff
            return out

        return homog(self.num), homog(self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalExpr(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _powers(poly, n):
    out = [_RING.one]
    for _ in range(n):
        out.append(out[-1] * poly)
    return out


def _check_matrix(gamma):
    (a, b), (c, d) = gamma
    if a * d - b * c == 0:
        raise SingularMatrix(f"matrix {gamma} is singular")
    return (a, b), (c, d)


def matmul(g1, g2):
    (a, b), (c, d) = g1
    (e, f), (g, h) = g2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def det(gamma) -> int:
    (a, b), (c, d) = gamma
    return a * d - b * c


def slash_action(F: RationalExpr, gamma, k: int, twist: int = 0) -> RationalExpr:
    """``(bc - ad)^k det^-twist (c z_dR + a)^-k F(gamma z)``.

    Weight-k functions are the fixed points at ``twist = 0``. The extra
    ``det^-twist`` makes the action commute with ``delta_k`` for matrices
    of any determinant (the weight-raising operator picks up one power).
    """
    (a, b), (c, d) = _check_matrix(gamma)
    dt = a * d - b * c
    factor = Fraction(-dt) ** k * Fraction(dt) ** (-twist)
    num, den = F._mobius_parts(gamma, both_vars=True)
    auto = (c * _X + a) ** abs(k)
    if k >= 0:
        den = den * auto
    else:
        num = num * auto
    return RationalExpr(num * QQ(factor.numerator, factor.denominator), den)


class LinearOperator:
    """A finite sum ``sum_e coeff_e * (d/dz_dR)**e``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = RationalExpr._lift(c)
            if not c.is_zero():
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def identity(cls) -> "LinearOperator":
        return cls({0: RationalExpr(1)})

    @classmethod
    def derivative(cls, e: int = 1) -> "LinearOperator":
        return cls({e: RationalExpr(1)})

    def order(self) -> int:
        return max(self.terms, default=-1)

    def apply(self, F: RationalExpr) -> RationalExpr:
        out = RationalExpr(0)
        deriv, e = F, 0
        for target in sorted(self.terms):
            while e < target:
                deriv = deriv.diff_zdR()
                e += 1
            out = out + self.terms[target] * deriv
        return out

    __call__ = apply

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return LinearOperator(terms)

    def scale(self, c) -> "LinearOperator":
        return LinearOperator({e: v * c for e, v in self.terms.items()})

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        """``self o other`` via Leibniz: ``D^e (b D^f) = sum_l C(e,l) D^l(b) D^(e-l+f)``."""
        out: dict[int, RationalExpr] = {}
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                deriv = b
                for l in range(e + 1):
                    if l:
                        deriv = deriv.diff_zdR()
                    if deriv.is_zero():
                        break
                    key = e - l + f
                    term = a * deriv * math.comb(e, l)
                    out[key] = out[key] + term if key in out else term
        return LinearOperator(out)

    def __matmul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = f"({self.terms[e]})"
            parts.append(c if e == 0 else f"{c}*D" if e == 1 else f"{c}*D^{e}")
        return " + ".join(parts)

    __str__ = pretty

    def __repr__(self):
        return f"LinearOperator[{self.pretty()}]"


def _inverse_gap() -> RationalExpr:
    return 1 / (RationalExpr.zdR() - RationalExpr.zbar())


def delta_k(k: int) -> LinearOperator:
    """The weight-raising operator ``d/dz_dR + k/(z_dR - z_bar)``."""
    return LinearOperator({1: 1, 0: _inverse_gap() * k})


def delta_power_composed(k: int, j: int) -> LinearOperator:
    """``delta_{k+2j-2} o ... o delta_{k+2} o delta_k`` by literal composition."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    op = LinearOperator.identity()
    for t in range(j):
        op = delta_k(k + 2 * t).compose(op)
    return op


def closed_form_coefficient(k: int, j: int, i: int) -> Fraction:
    """``C(k-1+j, i) C(j, i) i!`` with the generalized upper binomial."""
    return _gen_binom(k - 1 + j, i) * math.comb(j, i) * math.factorial(i)


def _gen_binom(n: int, i: int) -> Fraction:
    num = 1
    for t in range(i):
        num *= n - t
    return Fraction(num, math.factorial(i))


def delta_power_closed(k: int, j: int) -> LinearOperator:
    """``sum_i C(k-1+j, i) C(j, i) i! (z_dR - z_bar)^-i (d/dz_dR)^(j-i)``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    gap = _inverse_gap()
    terms = {}
    for i in range(j + 1):
        terms[j - i] = gap**i * closed_form_coefficient(k, j, i)
    return LinearOperator(terms)


# --------------------------------------------------------------------------
# deterministic pools for identity checks


def random_rational_expr(rng: random.Random, max_degree: int = 2, max_coeff: int = 5) -> RationalExpr:
    """A random nonzero rational function with small integer coefficients."""

    def poly(allow_zero):
        while True:
            p = _RING.zero
            for ex in range(max_degree + 1):
                for ey in range(max_degree + 1 - ex):
                    if rng.random() < 0.5:
                        p += rng.randint(-max_coeff, max_coeff) * _X**ex * _Y**ey
            if p or allow_zero:
                return p

    num = poly(False)
    den = poly(False) if rng.random() < 0.8 else _RING.one
    return RationalExpr(num, den)


def small_matrices(bound: int = 3) -> list:
    """All nonsingular integer matrices with entries in ``[-bound, bound]``."""
    rng = range(-bound, bound + 1)
    return [((a, b), (c, d)) for a, b, c, d in itertools.product(rng, rng, rng, rng) if a * d - b * c]


def sample_matrices(count: int, seed: int = 0, bound: int = 3) -> list:
    """``count`` distinct nonsingular matrices, always including the identity and a det = -1 swap."""
    pool = small_matrices(bound)
    chosen = [((1, 0), (0, 1)), ((0, 1), (1, 0))]
    rest = [g for g in pool if g not in chosen]
    random.Random(seed).shuffle(rest)
    return (chosen + rest)[:count]


def check_delta_identity(max_k: int, max_j: int) -> list[tuple[int, int]]:
    """Pairs ``(k, j)`` where the composed and closed forms differ."""
    failures = []
    for k in range(max_k + 1):
        composed = LinearOperator.identity()
        for j in range(max_j + 1):
            if j:
                composed = delta_k(k + 2 * (j - 1)).compose(composed)
            if composed != delta_power_closed(k, j):
                failures.append((k, j))
    return failures


def check_intertwining(functions: Iterable[RationalExpr], cases: Iterable[tuple], twisted: bool = True) -> list:
    """Cases ``(gamma, k, F)`` where ``delta_k`` fails to intertwine the slash actions.

    ``cases`` yields ``(gamma, k)`` pairs. With ``twisted`` the right-hand
    side carries one extra ``det^-1``; without it the literal law is
    checked, which holds only for det = 1.
    """
    failures = []
    functions = list(functions)
    for g, k in cases:
        dk = delta_k(k)
        for F in functions:
            lhs = dk(slash_action(F, g, k))
            rhs = slash_action(dk(F), g, k + 2, twist=1 if twisted else 0)
            if lhs != rhs:
                failures.append((g, k, F))
    return failures


def verify_identities(max_k: int = 6, max_j: int = 5, n_functions: int = 50, n_matrices: int = 20,
                      seed: int = 0) -> dict:
    """Run both operator identities; matrix number i is paired with weight i mod (max_k + 1)."""
    rng = random.Random(seed)
    pool = [random_rational_expr(rng) for _ in range(n_functions)]
    mats = sample_matrices(n_matrices, seed)
    cases = [(g, i % (max_k + 1)) for i, g in enumerate(mats)]
    delta_fail = check_delta_identity(max_k, max_j)
    inter_fail = check_intertwining(pool, cases)
    literal_fail = check_intertwining(pool, [(g, k) for g, k in cases if det(g) == 1], twisted=False)
    return {
        "delta_identity": "pass" if not delta_fail else "fail",
        "intertwining": "pass" if not inter_fail and not literal_fail else "fail",
        "delta_failures": len(delta_fail),
        "intertwining_failures": len(inter_fail),
        "literal_det1_failures": len(literal_fail),
        "functions": n_functions,
        "matrices": len(mats),
    }
