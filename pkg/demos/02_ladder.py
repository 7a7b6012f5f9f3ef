"""The ladder L_1, L_2, ... built by alternating U_7 steps with the
multiplier A, and the divisibility L_alpha / 7^floor(alpha/2)."""

from diamond7.eta import build_ladder, ladder_budget

alpha_max, N = 4, 12
print(ladder_budget(alpha_max, N))

mod = 7 ** 4
for st in build_ladder(alpha_max, N, modulus=mod):
    c = list(st.series.coeffs[:N])
    need = 7 ** (st.alpha // 2)
    print("L_%d mod 7^4, first terms %s ... divisible by %d: %s"
          % (st.alpha, c[:4], need, all(v % need == 0 for v in c)))
