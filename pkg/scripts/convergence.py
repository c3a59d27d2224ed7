"""Error against a reference value over a range of n, with the fitted log-log order."""

import argparse
from dataclasses import dataclass, field

from polycap.capacity import convergence_sweep
from polycap.domainfile import load_domain

REFERENCES = {
    "lens-0.8-0.3": 10.15585205509004,
    "lens-2/5-1/10": 4.371029672008615,
    "four-lens": 17.613666396960355,
    "mobius-E": 6.044918141954128,
    "bart": 7.265682491066263,
}


@dataclass
class Config:
    domain: str = "lens-0.8-0.3"
    n_list: list = field(default_factory=lambda: [256, 512, 1024, 2048, 4096])
    grading_p: int = 3


def main(cfg: Config):
    table = convergence_sweep(load_domain(f"builtin:{cfg.domain}"), cfg.n_list, REFERENCES.get(cfg.domain),
                              grading_p=cfg.grading_p)
    print("n,capacity,error")
    for r in table.rows:
        print(f"{r.n},{r.capacity:.16g},{'' if r.error is None else f'{r.error:.3e}'}")
    print(f"# reference {table.reference!r} (computed: {table.reference_is_computed}), slope {table.slope}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--domain", default=Config.domain, help="builtin fixture name")
    ap.add_argument("--n-list", default="256,512,1024,2048,4096")
    ap.add_argument("--grading-p", type=int, default=3)
    a = ap.parse_args()
    main(Config(a.domain, [int(x) for x in a.n_list.split(",")], a.grading_p))
