"""Lens family in the unit disk: capacity against the hyperbolic-perimeter bounds."""

import argparse
from dataclasses import dataclass

from polycap.analytic import cap_disk_segment
from polycap.capacity import lens_family, parse_grid


@dataclass
class Config:
    r: float = 0.8
    s_grid: str = "0.05:0.8:0.05"
    n: int = 1024


def main(cfg: Config):
    rows = lens_family(cfg.r, parse_grid(cfg.s_grid), cfg.n)
    print("s,hyp_perimeter,capacity,lower,upper,cap_minus_lower,upper_minus_cap")
    for r in rows:
        print(f"{r.s:g},{r.hyp_perimeter:.16g},{r.capacity:.16g},{r.lower:.16g},{r.upper:.16g},"
              f"{r.capacity - r.lower:.3e},{r.upper - r.capacity:.3e}")
    print(f"# segment limit (s -> 0): {cap_disk_segment(cfg.r):.16g}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=float, default=Config.r)
    ap.add_argument("--s-grid", default=Config.s_grid)
    ap.add_argument("--n", type=int, default=Config.n)
    a = ap.parse_args()
    main(Config(a.r, a.s_grid, a.n))
