"""Writing L_1 in the localized basis (1+7x)^-nu (P(x) + y Q(x)) and
reading off the 7-adic profile values."""

from diamond7.crossval import l1_representation
from diamond7.localized import membership_report, s_vector

e = l1_representation()
print("nu =", e.nu, " degree", max(m for _, m in e.coeffs))
for slot in [(0, 1), (0, 2), (1, 0), (0, 4), (0, 15)]:
    print("  coefficient of y^%d x^%d: %s" % (slot[0], slot[1], e.coeffs[slot]))

ok, deficits = membership_report(e, 1)
print("meets the odd-index valuation profile:", ok)
print("tracked values mod 49:", tuple(s_vector(e)))

# the same element round-trips through JSON
text = e.dumps()
print(len(text), "bytes of JSON")
