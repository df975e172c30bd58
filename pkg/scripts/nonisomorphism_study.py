#!/usr/bin/env python3
"""Groebner certificates for every fingerprint-exception pair.

The invariant fingerprint leaves twelve claimed-distinct pairs unseparated
(altverify.analysis.FINGERPRINT_EXCEPTIONS).  For each pair this script
emits the isomorphism system, with any family parameters carried along as
extra unknowns, and runs the bounded Groebner fallback until the basis
contains a nonzero constant.  "infeasible" therefore means: no isomorphism
exists for any parameter value, over any field extension of the base field.

(A13, A14) names the same pair of tables as (R01, R02), so eleven distinct
systems cover the twelve listed pairs.

Expected output (about four minutes on the reference container):

    A02  / A11 : infeasible
    J16  / J17 : infeasible
    J16  / J19 : infeasible
    J17  / J19 : infeasible
    R01  / R02 : infeasible
    S02  / S04 : infeasible
    L02  / L03 : infeasible
    BB01 / BB02: infeasible
    BB04 / BB05: infeasible
    BB04 / BB06: infeasible
    BB05 / BB06: infeasible
"""

import time

from altverify.analysis import emit_isomorphism_system
from altverify.catalog import get
from altverify.geometry import solve_system_bounded

PAIRS = [
    ("A02", "A11", 4000),
    ("J16", "J17", 4000),
    ("J16", "J19", 4000),
    ("J17", "J19", 4000),
    ("R01", "R02", 4000),
    ("S02", "S04", 4000),
    ("L02", "L03", 60000),
    ("BB01", "BB02", 200000),
    ("BB04", "BB05", 200000),
    ("BB04", "BB06", 200000),
    ("BB05", "BB06", 200000),
]


def main():
    bad = 0
    for a, b, budget in PAIRS:
        system = emit_isomorphism_system(get(a), get(b))
        t0 = time.time()
        report = solve_system_bounded(system, samples=0, seed=0,
                                      gb_steps=budget)
        dt = time.time() - t0
        print(f"{a:4} / {b:4}: {report.status} ({dt:.1f}s)")
        if report.status != "infeasible":
            bad += 1
            print(f"    {report.detail}")
    if bad:
        raise SystemExit(f"{bad} pair(s) without a certificate")
    print("all exception pairs certified non-isomorphic")


if __name__ == "__main__":
    main()
