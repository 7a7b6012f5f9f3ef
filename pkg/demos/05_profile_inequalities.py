"""Where do the valuation inequalities between the two profile families
fail?  The even-to-odd step is clean; the odd-to-even step fails on a
short finite list, and the slack grows beyond it."""

from diamond7.relations import (REFERENCE_DEVIANTS, expand_ranges, failure_set,
                                growth_certificate, slack)

print("V0 -> V1 failures over m, r <= 200:", sum(map(len, failure_set("V0->V1", 200).values())))

fails = failure_set("V1->V0", 60)
for pair, cells in sorted(fails.items()):
    listed = expand_ranges(REFERENCE_DEVIANTS[pair])
    print("(beta,gamma)=%s: %2d failures; listed-but-passing %s; unlisted %s"
          % (pair, len(cells), sorted(listed - cells), sorted(cells - listed)))

print("slack at (beta,gamma)=(1,0), (m,r)=(3,2):", slack("V1->V0", 1, 0, 3, 2))
for kind in ("V0->V1", "V1->V0"):
    print(kind, "growth certificate:", growth_certificate(kind, 60)["passed"])
