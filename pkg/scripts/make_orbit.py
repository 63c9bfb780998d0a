"""Write a synthetic orbit file and a matching character file.

    python3 scripts/make_orbit.py --prime 5 --points 3 --kind inert --out-dir /tmp/orbit
    padic-ms lfun --orbit /tmp/orbit/orbit.json --char /tmp/orbit/char.json
"""

import argparse
import json
import os

from padic_ms.io import character_to_json, orbit_to_json
from padic_ms.lfun import generate_orbit


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--prime", type=int, default=5)
    parser.add_argument("--precision", type=int, default=16)
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--j", type=int, default=0)
    parser.add_argument("--points", type=int, default=3)
    parser.add_argument("--order", type=int, default=12)
    parser.add_argument("--kind", choices=["ordinary", "inert", "ramified"], default="inert")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default=".")
    args = parser.parse_args()

    orbit, chi = generate_orbit(args.prime, args.precision, args.k, args.points, kind=args.kind,
                                order=args.order, seed=args.seed, j=args.j)
    os.makedirs(args.out_dir, exist_ok=True)
    for name, obj in (("orbit.json", orbit_to_json(orbit)), ("char.json", character_to_json(chi))):
        path = os.path.join(args.out_dir, name)
        with open(path, "w") as fh:
            json.dump(obj, fh, sort_keys=True, indent=2)
        print(path)


if __name__ == "__main__":
    main()
