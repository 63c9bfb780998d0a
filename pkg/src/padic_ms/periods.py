"""Period tuples ``(z, z_dR, y_dR, x_dR)`` and their GL2 transformation law.

All periods are stored divided by ``t``, so the Legendre relation reads
``x_dR / z + y_dR = 1``. The Hodge-Tate period ``z`` may be the point at
infinity (ordinary locus), with ``x_dR / inf = 0`` and ``b / inf = 0``.

Matrices ``((a, b), (c, d))`` act by::

    z     -> (d z + b) / (c z + a)            (same rule for z_dR)
    y_dR  -> (c z_dR + a)(b/z + d)(ad - bc)^-1 y_dR
    x_dR  -> (d x_dR - b y_dR)(b/z + d)(ad - bc)^-1

and acting by ``g1`` then ``g2`` equals acting by ``g1 @ g2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DegenerateTuple, DenominatorVanishes, NotRamified, RingMismatch
from .padic import CoefficientRing, Padic, ramified_quadratic, unramified_quadratic, smallest_nonresidue


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INFINITY = _Infinity()


def is_infinite(z) -> bool:
    return z is INFINITY


@dataclass(frozen=True, eq=False)
class PeriodTuple:
    z: object  # Padic or INFINITY
    z_dR: Padic
    y_dR: Padic
    x_dR: Padic

    @property
    def ring(self) -> CoefficientRing:
        return self.z_dR.ring

    def legendre_defect(self) -> Padic:
        """``x_dR / z + y_dR - 1``."""
        lhs = self.y_dR if is_infinite(self.z) else self.x_dR / self.z + self.y_dR
        return lhs - 1

    def check(self) -> dict:
        """Which of the defining relations hold at working precision."""
        out = {"legendre": self.legendre_defect().is_zero()}
        if not self.y_dR.is_zero():
            out["z_dR"] = self.z_dR == -self.x_dR / self.y_dR
        if not is_infinite(self.z):
            out["y_dR"] = self.y_dR == self.z / (self.z - self.z_dR)
        return out

    def is_valid(self) -> bool:
        return all(self.check().values())

    def __eq__(self, other):
        if not isinstance(other, PeriodTuple):
            return NotImplemented
        if is_infinite(self.z) != is_infinite(other.z):
            return False
        same_z = is_infinite(self.z) or self.z == other.z
        return same_z and self.z_dR == other.z_dR and self.y_dR == other.y_dR and self.x_dR == other.x_dR

    __hash__ = None


def make_tuple(z, z_dR: Padic) -> PeriodTuple:
    """Complete ``(z, z_dR)`` to a tuple satisfying the Legendre relation."""
    if is_infinite(z):
        y = z_dR.ring.one()
    else:
        if not isinstance(z, Padic):
            z = z_dR.ring(z)
        gap = z - z_dR
        if gap.is_zero():
            raise DegenerateTuple("z and z_dR coincide at working precision")
        y = z / gap
    return PeriodTuple(z, z_dR, y, -z_dR * y)


def _entries(gamma, ring):
    (a, b), (c, d) = gamma
    conv = lambda e: e if isinstance(e, Padic) else ring(e)
    return conv(a), conv(b), conv(c), conv(d)


def _mobius(w, a, b, c, d):
    if is_infinite(w):
        if c.is_zero():
            return INFINITY
        return d / c
    den = c * w + a
    num = d * w + b
    if den.is_zero():
        if num.is_zero():
            raise DenominatorVanishes("0/0 in the Mobius action")
        return INFINITY
    return num / den


def gl2_act(t: PeriodTuple, gamma) -> PeriodTuple:
    a, b, c, d = _entries(gamma, t.ring)
    det = a * d - b * c
    if det.is_zero():
        raise DenominatorVanishes("singular matrix")
    factor = (d if is_infinite(t.z) else b / t.z + d)
    if factor.is_zero():
        raise DenominatorVanishes("b/z + d vanishes")
    jac = c * t.z_dR + a
    if jac.is_zero():
        raise DenominatorVanishes("c z_dR + a vanishes")
    inv_det = det.inverse()
    y = jac * factor * inv_det * t.y_dR
    x = (d * t.x_dR - b * t.y_dR) * factor * inv_det
    z_new = _mobius(t.z, a, b, c, d)
    z_dR_new = _mobius(t.z_dR, a, b, c, d)
    if is_infinite(z_dR_new):
        raise DenominatorVanishes("z_dR sent to infinity")
    return PeriodTuple(z_new, z_dR_new, y, x)


def matmul(g1, g2):
    (a, b), (c, d) = g1
    (e, f), (g, h) = g2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


# --------------------------------------------------------------------------
# CM values


def cm_tuple_ramified(c: int, d: int, p: int, precision: int = 64) -> PeriodTuple:
    """Periods ``z = -1/(c sqrt(-d))``, ``z_dR = 1/(c sqrt(-d))`` with p ramified."""
    if p == 2 or d % p or c % p == 0:
        raise NotRamified(f"need odd p dividing d and not c (p={p}, d={d}, c={c})")
    ring = ramified_quadratic(p, -d, precision)
    root = ring.gen()  # sqrt(-d)
    z_dR = (root * c).inverse()
    return make_tuple(-z_dR, z_dR)


@dataclass(frozen=True)
class InertReport:
    passed: bool
    failures: tuple = field(default_factory=tuple)
    witnesses: dict = field(default_factory=dict)


def check_inert_constraints(t: PeriodTuple) -> InertReport:
    """Unit periods in the unramified quadratic ring with residues generating F_{p^2}."""
    failures, witnesses = [], {}
    if t.ring.kind != "unramified":
        raise RingMismatch("inert constraints need the unramified quadratic ring")
    if is_infinite(t.z):
        return InertReport(False, ("z is infinite",), {"z": "inf"})
    for name in ("z", "z_dR", "y_dR"):
        v = getattr(t, name).valuation()
        if v != 0:
            failures.append(f"|{name}| != 1")
            witnesses[name + "_valuation"] = str(v)
    if t.z.is_unit() and t.z_dR.is_unit():
        rz, rzd = t.z.residue(), t.z_dR.residue()
        if rz == rzd:
            failures.append("z = z_dR mod p")
            witnesses["residue"] = list(rz)
        for name, r in (("z", rz), ("z_dR", rzd)):
            if r[1] == 0:
                failures.append(f"residue of {name} lies in F_p, not generating F_p^2")
                witnesses[name + "_residue"] = list(r)
    return InertReport(not failures, tuple(failures), witnesses)


def random_inert_tuple(rng: random.Random, p: int, precision: int = 64, d: int | None = None) -> PeriodTuple:
    """Random unit periods in ``Q_p(sqrt d)`` passing :func:`check_inert_constraints`."""
    ring = unramified_quadratic(p, d if d is not None else smallest_nonresidue(p), precision)
    mod = p**precision

    def unit():
        return ring([rng.randrange(mod), rng.randrange(1, p) + p * rng.randrange(mod // p)])

    while True:
        z, z_dR = unit(), unit()
        if z.residue() != z_dR.residue():
            return make_tuple(z, z_dR)


def random_gl2_zp(rng: random.Random, p: int, congruent_to_identity: bool = False, bound: int | None = None):
    """Random integer matrix invertible over Z_p (optionally in 1 + p M_2)."""
    bound = bound or p**3
    while True:
        m = [[rng.randrange(-bound, bound + 1) for _ in range(2)] for _ in range(2)]
        if congruent_to_identity:
            m = [[1 + p * m[0][0], p * m[0][1]], [p * m[1][0], 1 + p * m[1][1]]]
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p:
            return ((m[0][0], m[0][1]), (m[1][0], m[1][1]))
