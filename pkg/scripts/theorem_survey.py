"""Sample random inner derivations and tally how the three invariance
conditions (integration by parts, infinitesimal, exponentiated) agree.

Usage: python scripts/theorem_survey.py [--algebra matrix:3] [--samples 50] [--seed 7]
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from algint.catalog import lookup, matrix_algebra, matrix_to_element
from algint.conjugation import find_c
from algint.derivations import inner_derivation, theorem_roundtrip
from algint.integration import integral_functional
from algint.linalg import SquareMatrix


@dataclass
class TheoremConfig:
    algebra: str = "matrix:3"
    samples: int = 50
    seed: int = 7
    bound: int = 5
    nilpotent: bool = False


def rand_q(rng, bound):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def nilpotent_ad(rng, n, bound):
    """Generator lambda I + g N g^{-1} with N strictly upper triangular."""
    while True:
        g = SquareMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if g.det():
            break
    N = SquareMatrix([[rand_q(rng, bound) if j > i else 0 for j in range(n)] for i in range(n)])
    return SquareMatrix.identity(n).scale(rand_q(rng, bound)) + g @ N @ g.inverse()


def run(cfg: TheoremConfig) -> Counter:
    rng = random.Random(cfg.seed)
    entry = lookup(cfg.algebra)
    alg = entry.algebra()
    c = entry.c_matrix()
    fn = integral_functional(alg, c if c is not None else find_c(alg).matrix, strict=False)
    tally = Counter()
    for _ in range(cfg.samples):
        if cfg.nilpotent:
            if entry.name != "matrix":
                raise SystemExit("--nilpotent needs a matrix:<N> algebra")
            a = matrix_to_element(alg, nilpotent_ad(rng, entry.params[0], cfg.bound))
        else:
            a = alg.element([rand_q(rng, cfg.bound) for _ in range(alg.dim)])
        rep = theorem_roundtrip(fn, inner_derivation(alg, a, check=False))
        tally[(rep.method, rep.legs, rep.agree)] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebra", default=TheoremConfig.algebra)
    ap.add_argument("--samples", type=int, default=TheoremConfig.samples)
    ap.add_argument("--seed", type=int, default=TheoremConfig.seed)
    ap.add_argument("--nilpotent", action="store_true",
                    help="draw generators whose inner derivation is nilpotent")
    args = ap.parse_args()
    cfg = TheoremConfig(algebra=args.algebra, samples=args.samples, seed=args.seed,
                        nilpotent=args.nilpotent)
    for (method, legs, agree), count in sorted(run(cfg).items(), key=str):
        print(f"{count:>5}  method={method:<14} legs={legs}  agree={agree}")


if __name__ == "__main__":
    main()
