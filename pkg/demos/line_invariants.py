# Line Gromov-Witten invariants, two independent ways.
#
# gw_direct substitutes X^(2g-1+i) -> (-8)^i/i! omega^i into an integral
# over J; gw_via_qhn works in the quantum ring of the projective bundle N.

import time

from qcoh import GWQuery, gw_direct, gw_via_qhn, legal_queries
from qcoh.gw import donaldson_line_value, representative_queries

q = GWQuery(3, 8, 0)
print("Psi(a^8), genus 3:", gw_direct(q), gw_via_qhn(q))

print("\ngenus 3 table, one query per symmetry type")
for q in representative_queries(3):
    print(f"  a^{q.a} b^{q.b} psi{q.psi}: {gw_direct(q)}   Donaldson {donaldson_line_value(q)}")

for g in (3, 4):
    t0 = time.perf_counter()
    n = 0
    for q in legal_queries(g):
        assert gw_direct(q) == gw_via_qhn(q)
        n += 1
    print(f"genus {g}: {n} queries agree ({time.perf_counter() - t0:.2f}s)")

# genus 2 is refused: h^2 is not beta there
try:
    gw_direct(GWQuery(2, 5, 0))
except ValueError as e:
    print("genus 2:", e)
