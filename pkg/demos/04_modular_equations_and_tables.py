"""Check the degree-14 modular equations, then build the h-tables that
describe U on basis monomials and test their n -> n+7 congruences.
The table build takes about a minute."""

import time

from diamond7.htable import standard_tables, verify_h_congruences
from diamond7.modeq import (load_modular_equation_data, verify_modeq_x, verify_modeq_z,
                            verify_recurrence_data, verify_substitution)

data = load_modular_equation_data()
print("modular equation data sha256", data.sha256[:16], "...")
print("z relation through q^1999:", verify_modeq_z(2000, data))
print("x relation through q^1999:", verify_modeq_x(2000, data))
print("z -> 1+7x maps one to the other:", verify_substitution(data))
print("w_hat(7) constant mod 49:", verify_recurrence_data(data)["c7_mod_49"])

t0 = time.time()
h1, h0 = standard_tables()
print("tables built in %.0fs: %d and %d cells" % (time.time() - t0, len(h1.support), len(h0.support)))
for t in (h1, h0):
    rep = verify_h_congruences(t, raise_on_failure=False)
    print("h^(%d): %d mod-49 and %d mod-7 checks, passed=%s"
          % (t.parity, rep["checked_mod49"], rep["checked_mod7"], rep["passed"]))
print("h^(1)_00(1, n, 1) for n = 1..14:", [h1.h(0, 0, 1, n, 1) % 49 for n in range(1, 15)])
