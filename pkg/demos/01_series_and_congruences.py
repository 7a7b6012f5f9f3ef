"""Truncated q-series, the diamond generating function, and a brute-force
look at d_2(n) modulo powers of 7 along 8n == 1 (mod 7^alpha)."""

from diamond7 import check_congruence, d_k, lambda_index
from diamond7.qseries import dilate, euler_factor, mul, u_operator

N = 30

# (q;q)_inf^-1 is the partition generating function
p = euler_factor(1, -1, N)
print("p(n), n < 12:", list(p.coeffs[:12]))

# U_7 picks every seventh coefficient; it commutes with multiplying by g(q^7)
g = euler_factor(1, 2, 5)
lhs = u_operator(mul(dilate(g, 7), p), 7)
rhs = mul(g, u_operator(p, 7))
print("U7(g(q^7) f) == g U7(f):", lhs == rhs)

d2 = d_k(2, 60)
print("d_2(0..6):", d2[:7])

for alpha in (1, 2, 3):
    lam = lambda_index(alpha)
    print("alpha=%d: 8n == 1 mod 7^%d starts at n=%d" % (alpha, alpha, lam))

rep = check_congruence(k=2, alpha_max=4, N=1500)
for row in rep["progressions"]:
    print("alpha=%d  mod %-3d  checked %-4d  %s"
          % (row["alpha"], row["modulus"], row["checked"], "ok" if row["passed"] else row["failures"]))
print("working order (raised to reach n=2101):", rep["order"])
