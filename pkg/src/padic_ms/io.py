"""JSON encoding of scalars, series, weights, tuples, orbits and characters.

A scalar is stored exactly as its internal representation::

    {"ring": "Qp" | {"kind": ..., ...}, "prime": p, "precision": N,
     "val": v, "shift": s, "abs_precision": a, "digits": [...]}

``digits`` are base-p digits, least significant first, of the unit part
(one list per power-basis coordinate outside Q_p). ``val`` is an integer,
a string ``"n/d"`` in ramified rings, or null for zero; ``abs_precision``
is null for an exact zero. Reading also accepts plain integers and
rational strings, interpreted in the ambient ring.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ParseError, ValidationError
from .padic import INF, CoefficientRing, Padic, WeightExponent
from .periods import INFINITY, PeriodTuple, is_infinite, make_tuple
from .series import BASES, TruncatedSeries


def valuation_to_json(v):
    if v == INF:
        return None
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return int(v)


def ring_from_json(obj, prime: int, precision: int) -> CoefficientRing:
    try:
        if obj in (None, "Qp"):
            return CoefficientRing("Qp", prime, precision)
        if obj == "cyclotomic" or (isinstance(obj, dict) and obj.get("kind") == "cyclotomic"):
            return CoefficientRing("cyclotomic", prime, precision)
        if isinstance(obj, dict) and obj.get("kind") == "unramified":
            return CoefficientRing("unramified", prime, precision, int(obj["d"]))
        if isinstance(obj, dict) and obj.get("kind") == "ramified":
            return CoefficientRing("ramified", prime, precision, int(obj["D"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad ring description {obj!r}") from exc
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    raise ParseError(f"unknown ring {obj!r}")


def _digits(n: int, p: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        n, d = divmod(n, p)
        out.append(d)
    return out


def scalar_to_json(x: Padic) -> dict:
    ring = x.ring
    p = ring.prime
    exact_zero = x.is_exact_zero()
    count = 0 if x.is_zero() else x.prec - x.shift
    if ring.degree == 1:
        digits = _digits(x.coeffs[0], p, count)
    else:
        digits = [_digits(c, p, count) for c in x.coeffs]
    return {
        "ring": ring.to_json(),
        "prime": p,
        "precision": ring.precision,
        "val": valuation_to_json(x.valuation()),
        "shift": 0 if x.is_zero() else x.shift,
        "abs_precision": None if exact_zero else int(x.prec),
        "digits": digits,
    }


def scalar_from_json(obj, ring: CoefficientRing) -> Padic:
    """Decode a scalar; ints and rational strings are read in ``ring``."""
    if isinstance(obj, bool):
        raise ParseError("booleans are not scalars")
    if isinstance(obj, int):
        return ring(obj)
    if isinstance(obj, str):
        try:
            return ring(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {obj!r}") from exc
    if isinstance(obj, list):
        return ring([Fraction(c) for c in obj])
    if not isinstance(obj, dict):
        raise ParseError(f"bad scalar {obj!r}")
    try:
        p = int(obj.get("prime", ring.prime))
        N = int(obj.get("precision", ring.precision))
        target = ring_from_json(obj.get("ring", "Qp"), p, N)
        if "coords" in obj:
            return target([Fraction(c) for c in obj["coords"]])
        if "value" in obj:
            return target(Fraction(str(obj["value"])))
        digits = obj["digits"]
        shift = int(obj.get("shift", 0))
        prec = obj.get("abs_precision")
        prec = INF if prec is None else int(prec)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad scalar {obj!r}: {exc}") from exc
    if target.degree == 1:
        digits = [digits]
    if len(digits) != target.degree:
        raise ParseError(f"expected {target.degree} digit lists")
    coeffs = [sum(int(d) * p**i for i, d in enumerate(ds)) for ds in digits]
    if not any(coeffs):
        return Padic._zero(target, prec)
    return Padic._make(target, coeffs, shift, prec)


def weight_to_json(j: WeightExponent):
    if j.integer is not None:
        return j.integer
    return {"residue": j.residue, "padic": j.padic_digits()}


def weight_from_json(obj, ring: CoefficientRing) -> WeightExponent:
    if isinstance(obj, bool):
        raise ParseError("j must be an integer or {residue, padic}")
    if isinstance(obj, int):
        return WeightExponent.from_int(obj, ring)
    if isinstance(obj, str):
        try:
            return WeightExponent.from_int(int(obj), ring)
        except ValueError as exc:
            raise ParseError(f"bad weight {obj!r}") from exc
    if isinstance(obj, dict):
        try:
            residue = int(obj["residue"])
            padic = obj["padic"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad weight {obj!r}") from exc
        if isinstance(padic, int):
            return WeightExponent(residue, ring(padic))
        if isinstance(padic, str):
            return WeightExponent(residue, ring(Fraction(padic)))
        return WeightExponent.from_digits(residue, [int(d) for d in padic], ring)
    raise ParseError(f"bad weight {obj!r}")


def _header(obj, prime=None, precision=None):
    try:
        p = int(obj["prime"])
        N = int(obj.get("precision", 64))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("file header needs a prime (and optionally a precision)") from exc
    if prime is not None and prime != p:
        raise ValidationError(f"--prime {prime} disagrees with file prime {p}")
    if precision is not None and precision != N:
        raise ValidationError(f"--precision {precision} disagrees with file precision {N}")
    return p, N


def series_to_json(f: TruncatedSeries) -> dict:
    return {
        "prime": f.prime,
        "precision": f.ring.precision,
        "ring": f.ring.to_json(),
        "basis": f.basis,
        "order": f.order,
        "coeffs": [scalar_to_json(c) for c in f.coeffs],
    }


def series_from_json(obj, prime=None, precision=None) -> TruncatedSeries:
    if not isinstance(obj, dict):
        raise ParseError("a series file must hold a JSON object")
    p, N = _header(obj, prime, precision)
    ring = ring_from_json(obj.get("ring", "Qp"), p, N)
    basis = obj.get("basis", "monomial_q")
    if basis not in BASES:
        raise ParseError(f"unknown basis {basis!r}")
    coeffs = obj.get("coeffs")
    if not isinstance(coeffs, list) or not coeffs:
        raise ParseError("coeffs must be a nonempty list")
    order = obj.get("order", len(coeffs) - 1)
    if order != len(coeffs) - 1:
        raise ValidationError(f"order {order} does not match {len(coeffs)} coefficients")
    return TruncatedSeries(ring, basis, tuple(scalar_from_json(c, ring) for c in coeffs))


def tuple_to_json(t: PeriodTuple) -> dict:
    return {
        "ring": t.ring.to_json(),
        "prime": t.ring.prime,
        "precision": t.ring.precision,
        "z": "inf" if is_infinite(t.z) else scalar_to_json(t.z),
        "z_dR": scalar_to_json(t.z_dR),
        "y_dR": scalar_to_json(t.y_dR),
        "x_dR": scalar_to_json(t.x_dR),
    }


def tuple_from_json(obj, prime=None, precision=None) -> PeriodTuple:
    """Read a full tuple, or complete ``{z, z_dR}`` with :func:`make_tuple`."""
    if not isinstance(obj, dict):
        raise ParseError("a tuple file must hold a JSON object")
    p, N = _header(obj, prime, precision)
    ring = ring_from_json(obj.get("ring", "Qp"), p, N)
    try:
        z_raw, zdr_raw = obj["z"], obj["z_dR"]
    except KeyError as exc:
        raise ParseError("a tuple needs z and z_dR") from exc
    z = INFINITY if z_raw == "inf" else scalar_from_json(z_raw, ring)
    z_dR = scalar_from_json(zdr_raw, ring)
    if "y_dR" in obj and "x_dR" in obj:
        return PeriodTuple(z, z_dR, scalar_from_json(obj["y_dR"], ring), scalar_from_json(obj["x_dR"], ring))
    return make_tuple(z, z_dR)


def matrix_from_json(obj):
    try:
        (a, b), (c, d) = obj
        return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"a matrix is [[a, b], [c, d]], got {obj!r}") from exc


def orbit_from_json(obj, prime=None, precision=None):
    from .lfun import OrbitDataset, OrbitPoint
    from .operator import OperatorParams

    if not isinstance(obj, dict):
        raise ParseError("an orbit file must hold a JSON object")
    p, N = _header(obj, prime, precision)
    try:
        k = int(obj["k"])
        b = Fraction(str(obj.get("b", 0)))
        raw_points = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad orbit header: {exc}") from exc
    base = CoefficientRing("Qp", p, N)
    points = []
    for raw in raw_points:
        try:
            label = str(raw["label"])
            series_obj = dict(raw["series"])
        except (KeyError, TypeError) as exc:
            raise ParseError("each point needs a label and a series") from exc
        series_obj.setdefault("prime", p)
        series_obj.setdefault("precision", N)
        series = series_from_json(series_obj, p, N)
        ratio_obj = raw.get("y_over_z", 0)
        ratio = scalar_from_json(ratio_obj, base)
        points.append(OrbitPoint(label, series, OperatorParams(k, ratio, b)))
    return OrbitDataset(p, N, k, b, points)


def orbit_to_json(orbit) -> dict:
    return {
        "prime": orbit.prime,
        "precision": orbit.precision,
        "k": orbit.k,
        "b": str(orbit.b),
        "points": [{"label": pt.label, "series": series_to_json(pt.series),
                    "y_over_z": scalar_to_json(pt.params.y_over_z)} for pt in orbit.points],
    }


def character_from_json(obj, ring: CoefficientRing):
    from .lfun import CharacterSpec

    if not isinstance(obj, dict) or "finite_values" not in obj:
        raise ParseError("a character file needs finite_values")
    values = {str(label): scalar_from_json(v, ring) for label, v in obj["finite_values"].items()}
    j = weight_from_json(obj.get("j", 0), ring)
    return CharacterSpec(values, j)


def character_to_json(chi) -> dict:
    return {
        "finite_values": {label: scalar_to_json(v) for label, v in sorted(chi.finite_values.items())},
        "j": weight_to_json(chi.j),
    }
