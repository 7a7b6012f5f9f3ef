"""The four linear forms p1..p4 over Z/49, their value at L_1, and the
stability of their span under one full step of the ladder."""

from diamond7.htable import standard_tables
from diamond7.ideal import GENERATORS, is_zero_ideal, rl_anomaly_check, stability_check

s = (29, 45, 1, 47, 42, 20, 40, 32, 0)
print("p1 . s =", sum(a * b for a, b in zip(GENERATORS[0], s)), "= 146 * 49")
print("all four forms vanish at L_1:", is_zero_ideal(s))
print("r_L forms lie in the span:", rl_anomaly_check(s)["passed"])

h1, h0 = standard_tables()
st = stability_check(h1, h0)
print("p1 image == 46 (p1 - p2):", st["p1_is_46_p1_minus_p2"])
for name, cert in st["certificates"].items():
    print("  %s image %s = combination %s" % (name, st["images"][name], cert["combination"]))
