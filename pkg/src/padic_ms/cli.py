"""Command-line front end.

Every subcommand reads JSON files, prints one JSON document on stdout and
exits with 0 on success, 1 with ``{"error": {code, module, message}}`` on a
library error, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dwork import canonical_lift, dwork_verdict
from .errors import PadicMSError, ParseError, ValidationError
from .io import (
    matrix_from_json,
    orbit_from_json,
    character_from_json,
    scalar_from_json,
    scalar_to_json,
    series_from_json,
    series_to_json,
    tuple_from_json,
    tuple_to_json,
    valuation_to_json,
    weight_from_json,
)
from .lfun import evaluate_Lp
from .operator import (
    OperatorParams,
    limit_sequence,
    p_stabilize,
    p_stabilize_average,
    theta_continuous_result,
    theta_integer_result,
)
from .periods import gl2_act
from .symbolic import verify_identities


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc.msg}") from exc


def _json_arg(text):
    """Parse a flag value as JSON, falling back to the raw string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _params(args, ring):
    ratio = scalar_from_json(_json_arg(args.y_over_z), ring)
    return OperatorParams(args.k, ratio, Fraction(args.b))


def _envelope(result: dict, prime: int, precision: int) -> dict:
    return {"prime": prime, "precision": precision, **result}


def cmd_theta_deriv(args):
    f = series_from_json(_load(args.series), args.prime, args.precision)
    params = _params(args, f.ring)
    raw_j = _json_arg(args.j)
    if isinstance(raw_j, int) and raw_j >= 0:
        res = theta_integer_result(f, raw_j, params, normalized=args.normalized)
    else:
        j = weight_from_json(raw_j, f.ring)
        res = theta_continuous_result(p_stabilize(f), j, params)
    return _envelope({"value": scalar_to_json(res.value), "truncation_index": res.truncation_index},
                     f.prime, f.ring.precision)


def cmd_stabilize(args):
    f = series_from_json(_load(args.series), args.prime, args.precision)
    g = p_stabilize_average(f) if args.method == "average" else p_stabilize(f)
    return series_to_json(g)


def cmd_limit(args):
    f = series_from_json(_load(args.series), args.prime, args.precision)
    params = _params(args, f.ring)
    j0 = int(_json_arg(args.j))
    table = limit_sequence(f, j0, params, args.m_max)
    rows = [{"m": r.m, "exponent": r.exponent, "value": scalar_to_json(r.value),
             "gap_valuation": valuation_to_json(r.gap_valuation)} for r in table.rows]
    return _envelope({"j0": j0, "target": scalar_to_json(table.target), "rows": rows,
                      "converges": table.converges()}, f.prime, f.ring.precision)


def cmd_legendre_check(args):
    t = tuple_from_json(_load(args.tuple), args.prime, args.precision)
    out = {"tuple": tuple_to_json(t), "checks": t.check()}
    if args.gamma:
        moved = gl2_act(t, matrix_from_json(_json_arg(args.gamma)))
        out["image"] = tuple_to_json(moved)
        out["image_checks"] = moved.check()
    out["pass"] = all(out["checks"].values()) and all(out.get("image_checks", {}).values())
    return _envelope(out, t.ring.prime, t.ring.precision)


def cmd_dwork_check(args):
    Q = series_from_json(_load(args.series), args.prime, args.precision)
    order = args.order if args.order is not None else Q.order
    if order > Q.order:
        raise ValidationError(f"--order {order} exceeds the series order {Q.order}")
    Q = Q.to_monomial().truncate(order)
    verdict = dwork_verdict(Q, canonical_lift(Q.prime, order, Q.ring))
    return _envelope(verdict.to_json(), Q.prime, Q.ring.precision)


def cmd_lfun(args):
    orbit = orbit_from_json(_load(args.orbit), args.prime, args.precision)
    chi = character_from_json(_load(args.char), orbit.base_ring)
    return _envelope({"value": scalar_to_json(evaluate_Lp(orbit, chi))}, orbit.prime, orbit.precision)


def cmd_verify_identities(args):
    report = verify_identities(args.max_k, args.max_j, args.functions, args.matrices, args.seed)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-ms", description="p-adic Maass-Shimura calculus")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *files):
        for name in files:
            p.add_argument(f"--{name}", required=True, help=f"{name} JSON file")
        p.add_argument("--prime", type=int, help="must match the file header")
        p.add_argument("--precision", type=int, help="must match the file header")

    def operator_flags(p):
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--j", required=True, help='integer or {"residue": r, "padic": [digits]}')
        p.add_argument("--y-over-z", default="0", help="scalar JSON, integer or rational string")
        p.add_argument("--b", default="0", help="integral scaling exponent")

    p = sub.add_parser("theta-deriv", help="evaluate the Maass-Shimura derivative at q = 1")
    common(p, "series")
    operator_flags(p)
    p.add_argument("--normalized", action="store_true", help="return (p^b theta_k)^j")
    p.set_defaults(func=cmd_theta_deriv)

    p = sub.add_parser("stabilize", help="p-stabilize a series")
    common(p, "series")
    p.add_argument("--method", choices=["kill", "average"], default="kill")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("limit", help="convergence table towards the stabilized value")
    common(p, "series")
    operator_flags(p)
    p.add_argument("--m-max", type=int, default=5)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("legendre-check", help="complete a period tuple and check its relations")
    common(p, "tuple")
    p.add_argument("--gamma", help="matrix [[a, b], [c, d]] to act by")
    p.set_defaults(func=cmd_legendre_check)

    p = sub.add_parser("dwork-check", help="Dwork integrality criterion against brute force")
    common(p, "series")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_dwork_check)

    p = sub.add_parser("lfun", help="evaluate the orbit L-sum")
    common(p, "orbit", "char")
    p.set_defaults(func=cmd_lfun)

    p = sub.add_parser("verify-identities", help="exact symbolic operator identities")
    p.add_argument("--max-k", type=int, default=6)
    p.add_argument("--max-j", type=int, default=5)
    p.add_argument("--functions", type=int, default=50)
    p.add_argument("--matrices", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_identities)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        code = 0
    except PadicMSError as exc:
        result = {"error": {"code": exc.code, "module": exc.module, "message": str(exc)}}
        code = 1
    except (ValueError, ZeroDivisionError) as exc:
        result = {"error": {"code": "validation_error", "module": "cli", "message": str(exc)}}
        code = 1
    json.dump(result, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
