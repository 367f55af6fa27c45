"""Run the simplicity decider across the bundled example pairings.

Prints one verdict line per (graph, cocycle) pair and exits nonzero if any
pairing errors out.  Useful as a quick end-to-end sanity pass after changes.
"""

import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

from ktwist.decider import DecisionBounds, decide_simplicity
from ktwist.io import load_cocycle, resolve_graph

PAIRINGS = [
    ("T2.json", "pullback_theta.json", None),
    ("T2.json", "pullback_half.json", None),
    ("B2xT1.json", "phi_theta.json", 4),
    ("B2xT1.json", "phi_zero.json", None),
    ("B2xT3.json", "b2t3.json", None),
    ("DISJOINT2.json", "pullback_b2.json", None),
]


def main() -> int:
    fixtures = ROOT / "fixtures"
    failures = 0
    for gname, cname, orbit in PAIRINGS:
        g, _ = resolve_graph(str(fixtures / gname))
        c, _ = load_cocycle(str(fixtures / cname), g)
        bounds = DecisionBounds(orbit=orbit) if orbit else DecisionBounds()
        t0 = time.time()
        try:
            report = decide_simplicity(g, c, bounds)
        except Exception as err:
            print(f"{gname} + {cname}: ERROR {err}")
            failures += 1
            continue
        kind = (report.verdict.certificate or {}).get("kind", "-")
        print(
            f"{gname} + {cname}: {report.verdict.status} "
            f"[{kind}] ({time.time() - t0:.2f}s)"
        )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
