#!/usr/bin/env python3
"""Freeze high-precision reference values for the privacy-amplification bound.

Evaluates eps_pa = 2^(E/2 - 1), E = -n*(1 - h2(delta+nu)) + r + t + l,
at 200-bit precision and writes 100 randomized parameter sets to
tests/data/pa_bound_oracle.jsonl.  Run once; the output is committed.
"""
import json
import random
import mpmath as mp

mp.mp.prec = 200

def h2(x):
    x = mp.mpf(x)
    return -x * mp.log(x, 2) - (1 - x) * mp.log(1 - x, 2)

def eps_pa(l, t, nu, delta, r, n):
    E = -mp.mpf(n) * (1 - h2(mp.mpf(delta) + mp.mpf(nu))) + r + t + l
    lg = E / 2 - 1
    if lg >= 0:
        return mp.mpf(1), lg
    return mp.power(2, lg), lg

def main():
    rng = random.Random(0x9a0c5e)
    rows = []
    while len(rows) < 100:
        n = rng.randint(2000, 20000)
        delta = rng.uniform(0.01, 0.12)
        nu = rng.uniform(0.001, 0.30)
        if delta + nu >= 0.49:
            continue
        r = rng.randint(0, int(0.5 * n))
        t = rng.randint(20, 40)
        window = float(n) * (1.0 - float(h2(delta + nu))) - r - t
        if window < 8:
            continue
        l = rng.randint(1, max(2, int(window) - 4))
        val, lg = eps_pa(l, t, nu, delta, r, n)
        rows.append({
            "l": l, "t": t, "nu": repr(nu), "delta": repr(delta),
            "r": r, "n": n, "eps": mp.nstr(val, 25), "lg2": mp.nstr(lg, 25),
        })
    # a few deliberately vacuous cases (bound clamps to 1)
    for l in (50000, 90000):
        val, lg = eps_pa(l, 30, 0.02, 0.05, 1000, 4000)
        rows.append({
            "l": l, "t": 30, "nu": repr(0.02), "delta": repr(0.05),
            "r": 1000, "n": 4000, "eps": "1.0", "lg2": mp.nstr(lg, 25),
        })
    with open("tests/data/pa_bound_oracle.jsonl", "w") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")
    print(f"wrote {len(rows)} rows")

if __name__ == "__main__":
    main()
