#!/usr/bin/env python3
"""Compute weight-2 newform Galois orbits at a set of levels with `msym`.

For each level, factor the characteristic polynomial of a Hecke combination on
the new subspace (sympy), then ask msym for every good-prime eigenvalue of each
orbit as a polynomial in the combination's eigenvalue. Orbits violating the
Ramanujan bound (Eisenstein leftovers) are dropped. Each orbit is re-expressed
in the smallest good prime q0 whose a_q0 generates the coefficient field.

Output: one JSON file per level under the given directory.
"""

import argparse
import json
import math
import os
import random
import subprocess
import tempfile

import numpy as np
import sympy as sp

X = sp.Symbol("x")


def primes_upto(n):
    return [p for p in range(2, n + 1) if sp.isprime(p)]


def msym(binary, *args):
    out = subprocess.run([binary, *map(str, args)], check=True, capture_output=True, text=True)
    return json.loads(out.stdout)


def combos_for(level):
    good = [p for p in primes_upto(60) if level % p]
    p1, p2, p3, p4 = good[:4]
    fixed = [f"{p1}:1", f"{p1}:1,{p2}:1", f"{p1}:1,{p2}:2", f"{p1}:2,{p2}:1,{p3}:1",
             f"{p1}:1,{p2}:3,{p3}:2,{p4}:5"]
    rng = random.Random(level)
    extra = []
    for _ in range(12):
        picks = sorted(rng.sample(good[:10], 4))
        extra.append(",".join(f"{q}:{rng.randint(1, 9 * (1 + len(extra)))}" for q in picks))
    return fixed + extra


def poly_from_coeffs(coeffs):
    return sp.Poly(list(reversed([int(c) for c in coeffs])), X)


def separating_factors(binary, level):
    for combo in combos_for(level):
        cp = msym(binary, "charpoly", level, "--combo", combo)
        poly = poly_from_coeffs(cp["charpoly"])
        _, facs = sp.factor_list(poly.as_expr(), X)
        if all(m == 1 for _, m in facs):
            factors = [sp.Poly(f, X) for f, _ in facs]
            factors = [f if f.LC() > 0 else -f for f in factors]
            return combo, factors, cp
    raise RuntimeError(f"no separating combination at level {level}")


def rat(pair):
    return sp.Rational(int(pair[0]), int(pair[1]))


def to_poly(coeffs):
    return sp.Poly(list(reversed([rat(c) for c in coeffs])), X, domain=sp.QQ)


def mult_matrix(elem, modulus):
    d = modulus.degree()
    rows = []
    for k in range(d):
        v = (elem * sp.Poly(X**k, X, domain=sp.QQ)).rem(modulus)
        c = list(reversed(v.all_coeffs()))
        c += [0] * (d - len(c))
        rows.append(c)
    return sp.Matrix(rows).T  # column k = elem * x^k


def minpoly_of(elem, modulus):
    m = mult_matrix(elem, modulus)
    cp = m.charpoly(X)
    return sp.Poly(cp.as_expr(), X, domain=sp.QQ)


def rebase(modulus, hq, q0):
    """Express every a_q in the generator beta = a_q0."""
    beta = hq[q0]
    mp = minpoly_of(beta, modulus)
    d = modulus.degree()
    # powers of beta in the theta basis -> solve for theta
    cols = []
    acc = sp.Poly(1, X, domain=sp.QQ)
    for _ in range(d):
        c = list(reversed(acc.all_coeffs()))
        c += [0] * (d - len(c))
        cols.append(c)
        acc = (acc * beta).rem(modulus)
    P = sp.Matrix(cols).T
    target = sp.Matrix([0, 1] + [0] * (d - 2)) if d >= 2 else sp.Matrix([0])
    sol = P.LUsolve(target)
    theta_in_beta = sp.Poly(list(reversed(list(sol))), X, domain=sp.QQ)
    out = {}
    for q, h in hq.items():
        comp = sp.Poly(h.as_expr().subs(X, theta_in_beta.as_expr()), X, domain=sp.QQ).rem(mp)
        out[q] = comp
    return mp, out


def is_cuspidal(modulus, hq):
    roots = np.roots([float(c) for c in modulus.all_coeffs()]) if modulus.degree() > 0 else []
    for q, h in hq.items():
        if q < 7:
            continue
        hc = [float(c) for c in h.all_coeffs()]
        for r in roots:
            if abs(np.polyval(hc, r)) > 2 * math.sqrt(q) + 1e-6:
                return False
    return True


def level_data(binary, level, qmax, nprimes):
    combo, factors, cp = separating_factors(binary, level)
    qs = primes_upto(qmax)
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump([[str(c) for c in reversed(f.all_coeffs())] for f in factors], fh)
        fpath = fh.name
    try:
        eig = msym(binary, "eigen", level, "--combo", combo, "--factors", fpath,
                   "--primes", ",".join(map(str, qs)), "--nprimes", nprimes)
    finally:
        os.unlink(fpath)
    forms = []
    for rec in eig["forms"]:
        theta_poly = poly_from_coeffs(rec["poly"]).set_domain(sp.QQ)
        hq = {int(q): to_poly(c) for q, c in rec["coeffs"].items()}
        if not is_cuspidal(theta_poly, hq):
            continue
        d = theta_poly.degree()
        if d == 1:
            vals = {q: h.eval(0) for q, h in hq.items()}
            forms.append({"degree": 1, "ap": {str(q): int(v) for q, v in sorted(vals.items())}})
            continue
        q0 = next(q for q in qs if level % q and minpoly_of(hq[q], theta_poly).degree() == d
                  and sp.Poly(minpoly_of(hq[q], theta_poly), X).is_irreducible
                  and sp.gcd(minpoly_of(hq[q], theta_poly), minpoly_of(hq[q], theta_poly).diff(X)).degree() == 0)
        mp, coeffs = rebase(theta_poly, hq, q0)
        forms.append({
            "degree": d,
            "generator": q0,
            "field_poly": [str(c) for c in reversed(mp.all_coeffs())],
            "coeffs": {str(q): [[str(sp.Rational(c).p), str(sp.Rational(c).q)]
                                for c in (list(reversed(h.all_coeffs())) + [0] * d)[:d]]
                       for q, h in sorted(coeffs.items())},
        })
    return {"level": level, "combo": combo, "new_dim": cp["new_dim"], "forms": forms}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--msym", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--qmax", type=int, default=50)
    ap.add_argument("--nprimes", type=int, default=14)
    ap.add_argument("levels", type=int, nargs="+")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for level in args.levels:
        data = level_data(args.msym, level, args.qmax, args.nprimes)
        with open(os.path.join(args.out, f"level_{level}.json"), "w") as fh:
            json.dump(data, fh, indent=1)
        degs = sorted(f["degree"] for f in data["forms"])
        print(level, data["combo"], "orbits:", len(degs), "degrees:", degs, flush=True)


if __name__ == "__main__":
    main()
