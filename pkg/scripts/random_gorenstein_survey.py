#!/usr/bin/env python3
"""Survey Lefschetz behaviour over random Gorenstein algebras.

Samples Macaulay dual generators, builds the annihilator algebras and
tabulates WLP/SLP verdicts, unimodality, and how often the narrow-sense
property follows the symmetric+SLP equivalence.  Seeded and reproducible.

    python scripts/random_gorenstein_survey.py --samples 40 --seed 7
"""

import argparse
import random
from collections import Counter

from lefschetz.algebra import Ring, from_dual_generator
from lefschetz.checks import GenericityConfig, slp_generic, symmetric, unimodal, wlp_generic
from lefschetz.exactmath import QQ
from lefschetz.polynomials import DualPoly, monomials


def sample_algebra(rng, nvars_max=3, deg_max=5, dim_max=40):
    while True:
        n = rng.randint(2, nvars_max)
        deg = rng.randint(2, deg_max)
        monos = monomials(n, deg)
        k = rng.randint(2, min(6, len(monos)))
        F = DualPoly.make(n, QQ, {m: rng.randint(-4, 4) for m in rng.sample(monos, k)})
        if F.is_zero() or F.degree() != deg:
            continue
        alg = from_dual_generator(F, Ring(tuple("xyzw"[:n]), QQ))
        if alg.total_dim() <= dim_max:
            return F, alg


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cfg = GenericityConfig(seed=args.seed, trials=args.trials)
    tally = Counter()
    for i in range(args.samples):
        F, alg = sample_algebra(rng)
        h = alg.hilbert_function()
        wlp = wlp_generic(alg, cfg)
        slp = slp_generic(alg, cfg)
        tally["total"] += 1
        tally["wlp"] += bool(wlp.holds)
        tally["slp"] += bool(slp.holds)
        tally["unimodal"] += unimodal(h)
        tally["symmetric"] += symmetric(h)
        if slp.holds and not wlp.holds:
            raise AssertionError("SLP without WLP: impossible")
        print(
            f"[{i:3d}] n={alg.nvars} H={h} wlp={wlp.holds} slp={slp.holds} "
            f"({slp.certification})"
        )
    print("\nsummary:")
    for key in ("total", "wlp", "slp", "unimodal", "symmetric"):
        print(f"  {key:10s} {tally[key]}")


if __name__ == "__main__":
    main()
