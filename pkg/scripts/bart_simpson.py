"""Bart Simpson condenser (best-effort outline reconstruction): capacity for n = 9*2^k."""

import argparse
from dataclasses import dataclass

from polycap.capacity import capacity
from polycap.geometry import BART_SIMPSON_PIECES, make_bart_simpson, validate

HP_FEM = 7.265682491066263
REFERENCE_BIE = {9 * 2**8: 7.26568934865634, 9 * 2**9: 7.26568351878449,
                 9 * 2**10: 7.26568260732833, 9 * 2**11: 7.26568246621964}


@dataclass
class Config:
    k_min: int = 6
    k_max: int = 11


def main(cfg: Config):
    cond = make_bart_simpson()
    print(f"# {len(BART_SIMPSON_PIECES)} pieces, violations: {validate(cond)}")
    print("n,capacity,minus_hp_fem,minus_reference_bie,solver,gmres_iterations,seconds")
    for k in range(cfg.k_min, cfg.k_max + 1):
        n = 9 * 2**k
        res = capacity(cond, n)
        pub = REFERENCE_BIE.get(n)
        d = res.diagnostics
        print(f"{n},{res.capacity:.15g},{res.capacity - HP_FEM:+.3e},"
              f"{'' if pub is None else f'{res.capacity - pub:+.3e}'},{d['solver']},"
              f"{';'.join(map(str, d['gmres_iterations']))},{res.seconds:.1f}", flush=True)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=6)
    ap.add_argument("--k-max", type=int, default=11)
    a = ap.parse_args()
    main(Config(a.k_min, a.k_max))
