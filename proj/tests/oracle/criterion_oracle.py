#!/usr/bin/env python3
"""Brute-force reimplementation of the q = np+1 criterion, used as an oracle.

Prints, per prime p, the smallest even n passing each branch. Everything is
counted by exhaustion over F_q; nothing is shared with the C++ code except
the curve models read from the fixture.
"""

import argparse
import json
import subprocess
import sys


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def squares(q):
    s = [0] * q
    for y in range(q):
        s[y * y % q] += 1
    return s


def count_long(a, q, sq):
    a1, a2, a3, a4, a6 = (x % q for x in a)
    n = 1
    for x in range(q):
        # y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6, completing the square
        b = (a1 * x + a3) % q
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % q
        n += sq[(b * b + 4 * rhs) % q]
    return n


def count_short(a2, a4, q, sq):
    return 1 + sum(sq[(x * x * x + a2 * x * x + a4 * x) % q] for x in range(q))


def criterion(p, n, model, family, q, sq):
    aq = q + 1 - count_long(model, q, sq)
    if (aq * aq - 4) % p == 0:
        return False
    c, k4, div = (62500, 25, 25) if family == 1 else (20, 5, 1)
    inv = pow(div, q - 2, q)
    for z in range(1, q):
        if pow(z, n, q) != 1:
            continue
        t = (405 + c * z) % q
        if not sq[t]:
            continue
        d = min(y for y in range(q) if y * y % q == t)
        for sign, ok in ((1, sq[(-225 + 10 * d) % q]), (-1, sq[(-225 - 10 * d) % q])):
            if not ok:
                continue
            a2 = (-sign * d * inv) % q
            tr = q + 1 - count_short(a2, k4 * z % q, q, sq)
            if (aq - tr) % p == 0:
                return False
    return True


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixtures", required=True)
    ap.add_argument("--n-max", type=int, default=200)
    ap.add_argument("--compare-cli", help="frey binary whose criterion output must agree")
    ap.add_argument("primes", type=int, nargs="+")
    args = ap.parse_args()
    models = {r["label"]: r["model"] for r in json.load(open(args.fixtures)) if r["kind"] == "elliptic"}
    for p in args.primes:
        row = {"p": p}
        for branch, label, family in (("K", "1200K1", 1), ("A", "1200A1", 2)):
            row[branch] = None
            for n in range(2, args.n_max + 1, 2):
                q = n * p + 1
                if not is_prime(q):
                    continue
                if criterion(p, n, [int(x) for x in models[label]], family, q, squares(q)):
                    row[branch] = n
                    break
        print(json.dumps(row))
        if args.compare_cli:
            out = subprocess.run(
                [args.compare_cli, "--format", "json", "criterion", "--p", str(p), "--n-max", str(args.n_max),
                 "--fixtures", args.fixtures],
                capture_output=True, text=True,
            )
            got = {r["branch"]: r.get("n") for r in map(json.loads, out.stdout.splitlines())}
            if got != {"K": row["K"], "A": row["A"]}:
                print(f"mismatch at p={p}: cli {got}", file=sys.stderr)
                sys.exit(1)


if __name__ == "__main__":
    main()
