#!/usr/bin/env python3
"""Survey the bundled algebras: dimensions, bricks, sequences, certificates."""

import itertools

from exrep.exceptional import EnumerationConfig, enumerate_bricks, enumerate_ces
from exrep.goldens import bundled_algebra
from exrep.recollements import build_recollement

NAMES = ("a3", "a3_ab", "cycle3", "cycle3_ab", "a42")


def main() -> None:
    cfg = EnumerationConfig()
    for name in NAMES:
        alg = bundled_algebra(name)
        bricks = enumerate_bricks(alg, cfg)
        ces = enumerate_ces(alg, cfg)
        print(f"{name}: dim {alg.dim}, {len(bricks.items)} bricks (dim bound 1), "
              f"{len(ces.items)} complete exceptional sequences")
    print()
    a3 = bundled_algebra("a3")
    for k in range(1, a3.n_vertices + 1):
        for eps in itertools.combinations(a3.vertices, k):
            rec = build_recollement(a3, eps)
            print(f"a3, eps={{{','.join(eps)}}}: dim quotient {rec.Abar.dim}, "
                  f"dim corner {rec.Atilde.dim}, "
                  f"i^* exact {rec.istar_exact}, i^! exact {rec.ishriek_exact}")


if __name__ == "__main__":
    main()
