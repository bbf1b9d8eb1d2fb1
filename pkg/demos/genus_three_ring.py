# The invariant quantum ring in genus 3 and why its relations are forced.

from qcoh import prop19_exclusion_check, prop19_identity_check, quantum_ring
from qcoh.qh import cor20_assembly, hat_text

ring = quantum_ring(3)
a, b, c = ring.parse("ah"), ring.parse("bh"), ring.parse("gh")
print("relations:", ring.relations.to_text())
print("dimension:", ring.dimension)

for label, x in [
    ("gh^3", ring.product(c, c, c)),
    ("gh^4", ring.product(c, c, c, c)),
    ("gh (bh - 8)", ring.product(c, b - 8)),
    ("gh^2 (bh - 8)", ring.product(c, c, b - 8)),
    ("ah * ah", ring.product(a, a)),
]:
    print(f"  {label} = {hat_text(x)}")

# Replaying the exclusion argument: a deformation R^2 + x or R^3 + y ah
# together with gh^4 = 0 loses dimension, so x = y = 0.
for rep in (prop19_identity_check(), prop19_exclusion_check()):
    print(rep.name, "passed" if rep.passed else "FAILED")
    for t in rep.trace:
        print("   ", t)

print("summands:")
for s in cor20_assembly():
    print(f"  k={s.k}: {s.primitive_dim} x {s.ring_dim}", [hat_text(r) for r in s.relations])
