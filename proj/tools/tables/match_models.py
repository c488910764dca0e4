#!/usr/bin/env python3
"""Attach a global minimal Weierstrass model to each rational newform.

Candidates come from `ecsearch` (one [a1,a2,a3,a4,a6] per line). Every candidate
is closed under quadratic twists by d built from {-1, 2, 3, 5, 7, 13}, reduced to
a global minimal model, and matched against the newforms' a_p at good primes.
"""

import argparse
import itertools
import json
import sys

import sympy as sp

TWIST_PRIMES = [-1, 2, 3, 5, 7, 13]
S = [2, 3, 5, 7, 13]


def c_invariants(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc


def from_c4c6(c4, c6):
    """Integral model with invariants (c4, c6), or None (Kraus' construction)."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    if (b2 * b2 - c4) % 24:
        return None
    b4 = (b2 * b2 - c4) // 24
    num = -b2 ** 3 + 36 * b2 * b4 - c6
    if num % 216:
        return None
    b6 = num // 216
    a1 = b2 % 2
    a3 = b6 % 2
    if (b2 - a1) % 4 or (b4 - a1 * a3) % 2 or (b6 - a3) % 4:
        return None
    model = [a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4]
    return model if c_invariants(model)[:2] == (c4, c6) else None


def minimal_model(c4, c6):
    disc = (c4 ** 3 - c6 ** 2)
    assert disc % 1728 == 0
    disc //= 1728
    u = 1
    for p in S:
        e = 0
        while True:
            q = p ** (e + 1)
            if c4 % q ** 4 or c6 % q ** 6 or disc % q ** 12:
                break
            e += 1
        while e > 0:
            uu = u * p ** e
            if from_c4c6(c4 // uu ** 4, c6 // uu ** 6) is not None:
                break
            e -= 1
        u *= p ** e
    model = from_c4c6(c4 // u ** 4, c6 // u ** 6)
    return model


def count_points(a, p):
    a1, a2, a3, a4, a6 = (x % p for x in a)
    if p == 2:
        return 1 + sum((y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0
                       for x in range(2) for y in range(2))
    n = 1
    for x in range(p):
        disc = ((a1 * x + a3) ** 2 + 4 * (x ** 3 + a2 * x * x + a4 * x + a6)) % p
        n += 1 + sp.legendre_symbol(disc, p) if disc else 1
    return n


def ap(a, p):
    return p + 1 - count_points(a, p)


def twists():
    out = set()
    for r in range(len(TWIST_PRIMES) + 1):
        for combo in itertools.combinations(TWIST_PRIMES, r):
            d = 1
            for x in combo:
                d *= x
            out.add(d)
    return sorted(out)


def main():
    ap_ = argparse.ArgumentParser()
    ap_.add_argument("--candidates", required=True)
    ap_.add_argument("--levels", required=True, help="directory of level_N.json files")
    ap_.add_argument("--out", required=True)
    ap_.add_argument("levels_list", type=int, nargs="+")
    args = ap_.parse_args()

    check = [p for p in sp.primerange(11, 48) if p != 13]
    targets = {}
    prefixes = set()
    for n in args.levels_list:
        data = json.load(open(f"{args.levels}/level_{n}.json"))
        for i, f in enumerate(data["forms"]):
            if f["degree"] == 1:
                key = tuple(f["ap"][str(p)] for p in check)
                targets.setdefault(key, []).append((n, i))
                for k in range(1, len(key) + 1):
                    prefixes.add(key[:k])

    seen = set()
    found = {}
    with open(args.candidates) as fh:
        for line in fh:
            a = json.loads(line)
            c4, c6, _ = c_invariants(a)
            for d in twists():
                t4, t6 = 6 ** 4 * c4 * d * d, 6 ** 6 * c6 * d ** 3
                m = minimal_model(t4, t6)
                if m is None:
                    continue
                mk = tuple(m)
                if mk in seen:
                    continue
                seen.add(mk)
                key = ()
                for p in check:
                    key += (ap(m, p),)
                    if key not in prefixes:
                        break
                for n, i in targets.get(key, []):
                    if (n, i) in found:
                        continue
                    data = json.load(open(f"{args.levels}/level_{n}.json"))
                    f = data["forms"][i]
                    ok = all(ap(m, int(q)) == v for q, v in f["ap"].items())
                    if ok:
                        found[(n, i)] = m
    missing = [(n, i) for key in targets.values() for (n, i) in key if (n, i) not in found]
    json.dump({f"{n}:{i}": m for (n, i), m in sorted(found.items())}, open(args.out, "w"), indent=0)
    print("matched", len(found), "missing", len(missing), file=sys.stderr)
    for n, i in sorted(missing):
        print("  missing", n, i, file=sys.stderr)


if __name__ == "__main__":
    main()
