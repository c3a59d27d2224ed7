"""Regenerate the builtin domain files in src/polycap/fixtures from the Python builders."""

from pathlib import Path

from polycap.domainfile import BUILTIN, dump_condenser
from polycap.geometry import (
    PolycircularCondenser,
    default_alpha_k,
    make_bart_simpson,
    make_circle,
    make_four_lens,
    make_lens,
    make_mobius_e_condenser,
    mobius_e_candidates,
    unit_disk_condenser,
)

OUT = Path(__file__).resolve().parents[1] / "src" / "polycap" / "fixtures"


def fixtures():
    annulus = PolycircularCondenser(make_circle(0j, 1.0), (make_circle(0j, 0.7, ccw=False),), 0.85, (0j,), "annulus-0.7")
    disk = PolycircularCondenser(make_circle(0j, 1.0), (make_circle(0j, 0.8, ccw=False),), 0.9, (0j,), "disk-0.8")
    lenses = make_four_lens()
    return {
        "annulus-0.7": (annulus, None),
        "disk-0.8": (disk, None),
        "lens-2/5-1/10": (unit_disk_condenser([make_lens(0.4, 0.1)], 0.7j, [0j], "lens-2/5-1/10"), None),
        "lens-0.8-0.3": (unit_disk_condenser([make_lens(0.8, 0.3)], 0.9j, [0j], "lens-0.8-0.3"), None),
        "mobius-E": (
            make_mobius_e_condenser(),
            "first arc read through -0.2, 0.6i, 0.2; the literal -2 reading is mobius-E-literal",
        ),
        "mobius-E-literal": (
            unit_disk_condenser([mobius_e_candidates()["literal"]], -0.3j, [0.3j], "mobius-E-literal"),
            "first arc through -2, 0.6i, 0.2 as written; not a closed curve, fails validation",
        ),
        "four-lens": (
            unit_disk_condenser(lenses, 0j, [default_alpha_k(c) for c in lenses], "four-lens"),
            None,
        ),
        "bart": (make_bart_simpson(), "best-effort reconstruction of the Bart Simpson outline; the piece pairing is inferred"),
    }


def main():
    items = fixtures()
    assert set(items) == set(BUILTIN)
    for name, (cond, note) in items.items():
        (OUT / BUILTIN[name]).write_text(dump_condenser(cond, note), encoding="utf-8")
        print("wrote", BUILTIN[name])


if __name__ == "__main__":
    main()
