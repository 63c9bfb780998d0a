"""Character-weighted sums of Maass-Shimura derivatives over a CM orbit.

An orbit is a list of labelled points, each carrying the localized
q-expansion at that point and its period ratio. A character supplies one
unit per label (with the norm twist already folded in) and the exponent
``j``. The L-value is::

    L = sum_a chi(a) * (p^b theta_k)^j (f_a stabilized)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import EmptyOrbit, ValidationError
from .operator import OperatorParams, p_stabilize, theta_continuous_result
from .padic import CoefficientRing, Padic, Qp, WeightExponent, padic_power, ramified_quadratic, teichmuller
from .periods import random_inert_tuple
from .series import MONOMIAL_Q, TruncatedSeries


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    label: str
    series: TruncatedSeries
    params: OperatorParams


@dataclass(frozen=True, eq=False)
class CharacterSpec:
    """Per-label unit values and the exponent ``j``.

    ``nebentype`` maps a unit ``u`` of Z_p to a unit; it is only used by
    the representative-invariance check and defaults to the trivial one.
    """

    finite_values: dict
    j: WeightExponent
    nebentype: Callable | None = None

    def __post_init__(self):
        for label, v in self.finite_values.items():
            if not v.is_unit():
                raise ValidationError(f"character value at {label!r} is not a unit")

    def eps(self, u: Padic) -> Padic:
        return self.nebentype(u) if self.nebentype else u.ring.one()

    def with_j(self, j: WeightExponent) -> "CharacterSpec":
        return CharacterSpec(self.finite_values, j, self.nebentype)


@dataclass(frozen=True, eq=False)
class OrbitDataset:
    prime: int
    precision: int
    k: int
    b: Fraction
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "b", Fraction(self.b))
        if not self.points:
            raise EmptyOrbit("an orbit needs at least one point")
        labels = [pt.label for pt in self.points]
        if len(set(labels)) != len(labels):
            raise ValidationError("orbit labels must be distinct")
        for pt in self.points:
            if pt.series.prime != self.prime or pt.params.prime != self.prime:
                raise ValidationError(f"point {pt.label!r} lives over another prime")
            if pt.params.precision != self.precision or pt.series.ring.precision != self.precision:
                raise ValidationError(f"point {pt.label!r} has a different precision")
            if pt.params.k != self.k or pt.params.b != self.b:
                raise ValidationError(f"point {pt.label!r} disagrees on k or b")

    @property
    def base_ring(self) -> CoefficientRing:
        return Qp(self.prime, self.precision)


def point_terms(orbit: OrbitDataset, j: WeightExponent) -> dict:
    """``(p^b theta_k)^j`` of each stabilized point series, keyed by label."""
    return {pt.label: theta_continuous_result(p_stabilize(pt.series), j, pt.params).value
            for pt in orbit.points}


def _character_value(chi: CharacterSpec, label: str) -> Padic:
    try:
        return chi.finite_values[label]
    except KeyError:
        raise ValidationError(f"character has no value at {label!r}") from None


def evaluate_Lp(orbit: OrbitDataset, chi: CharacterSpec) -> Padic:
    if not orbit.points:
        raise EmptyOrbit("empty orbit")
    terms = point_terms(orbit, chi.j)
    total = orbit.base_ring.zero()
    for label in sorted(terms):
        total = total + _character_value(chi, label) * terms[label]
    return total


def check_representative_invariance(orbit: OrbitDataset, chi: CharacterSpec, u: Padic) -> bool:
    """Rescale terms by ``u^(k+2j) eps(u)`` and character values by the inverse; compare."""
    weight = chi.j * 2 + orbit.k
    factor = padic_power(u, weight) * chi.eps(u)
    inv = factor.inverse()
    terms = point_terms(orbit, chi.j)
    original = orbit.base_ring.zero()
    moved = orbit.base_ring.zero()
    for label in sorted(terms):
        value = _character_value(chi, label)
        original = original + value * terms[label]
        moved = moved + (value * inv) * (terms[label] * factor)
    return original == moved


@dataclass(frozen=True)
class ContinuityReport:
    values: tuple
    gap_valuations: tuple
    cauchy: bool

    def to_json(self):
        from .io import scalar_to_json, valuation_to_json
        return {
            "values": [scalar_to_json(v) for v in self.values],
            "gap_valuations": [valuation_to_json(g) for g in self.gap_valuations],
            "cauchy": self.cauchy,
        }


def continuity_probe(orbit: OrbitDataset, chis: Sequence[CharacterSpec]) -> ContinuityReport:
    """L-values along a sequence of characters and the valuations of successive gaps.

    ``cauchy`` holds when the gap valuations never decrease over the second
    half of the sequence and end strictly above where they started, or when
    every gap is zero at working precision.
    """
    values = [evaluate_Lp(orbit, chi) for chi in chis]
    diffs = [b - a for a, b in zip(values, values[1:])]
    gaps = [d.valuation_lower_bound() for d in diffs]
    if len(gaps) < 2 or all(d.is_zero() for d in diffs):
        cauchy = True
    else:
        tail = gaps[len(gaps) // 2:]
        cauchy = all(x <= y for x, y in zip(tail, tail[1:])) and gaps[-1] > gaps[0]
    return ContinuityReport(tuple(values), tuple(gaps), cauchy)


def weight_sequence(j: WeightExponent, count: int) -> list[WeightExponent]:
    """``j_n = j + (p-1)p^n`` for ``n < count``, so ``j_n = j mod (p-1)p^n``."""
    p = j.prime
    return [j + (p - 1) * p**n for n in range(count)]


# --------------------------------------------------------------------------
# synthetic orbits


def random_integral_series(rng: random.Random, ring: CoefficientRing, order: int,
                           stabilized: bool = False) -> TruncatedSeries:
    p = ring.prime
    bound = p ** min(ring.precision, 6)
    coeffs = [0 if stabilized and n % p == 0 else rng.randrange(bound) for n in range(order + 1)]
    return TruncatedSeries(ring, MONOMIAL_Q, tuple(coeffs))


def random_unit(rng: random.Random, ring: CoefficientRing) -> Padic:
    p = ring.prime
    return ring(rng.randrange(1, p) + p * rng.randrange(p ** min(ring.precision, 8)))


def generate_orbit(p: int, precision: int, k: int, n_points: int, kind: str = "inert",
                   order: int = 12, seed: int = 0, j=0) -> tuple[OrbitDataset, CharacterSpec]:
    """A synthetic orbit with admissible period ratios and a random unit character.

    ``kind`` selects the ratio pattern: ``ordinary`` (ratio 0), ``inert``
    (unit ratios in the unramified quadratic ring) or ``ramified``
    (``c sqrt(-p) / 2``, of valuation 1/2).
    """
    rng = random.Random(seed)
    base = Qp(p, precision)
    points = []
    for idx in range(n_points):
        if kind == "ordinary":
            ratio = base.zero()
        elif kind == "inert":
            t = random_inert_tuple(rng, p, precision)
            ratio = -t.y_dR / t.z
        elif kind == "ramified":
            ring = ramified_quadratic(p, -p, precision)
            c = rng.randrange(1, p)
            ratio = ring.gen() * Fraction(c, 2)
        else:
            raise ValueError(f"unknown orbit kind {kind!r}")
        series = random_integral_series(rng, base, order)
        points.append(OrbitPoint(f"a{idx}", series, OperatorParams(k, ratio)))
    orbit = OrbitDataset(p, precision, k, Fraction(0), points)
    if isinstance(j, int):
        j = WeightExponent.from_int(j, base)
    values = {}
    for pt in points:
        # a root of unity times a unit
        root = teichmuller(base(rng.randrange(1, p)))
        values[pt.label] = root * base(1 + p * rng.randrange(p**4))
    return orbit, CharacterSpec(values, j)
