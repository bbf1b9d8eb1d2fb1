# Relations in the invariant ring Q[a, b, g] and the quotients they cut out.
#
# a, b, g have degrees 2, 4, 6.  The classical ideal I_g has three
# generators of degrees 2g, 2g+2, 2g+4, built by a short recursion.

from math import comb

from qcoh import classical_presentation, classical_relations, floer_relations, quantum_relations
from qcoh.quotient import hilbert_series_complete_intersection, poincare_polynomial_invariant

for g in range(1, 5):
    print(f"genus {g}")
    for name, triple in [
        ("classical", classical_relations(g)),
        ("floer", floer_relations(g)),
        ("quantum", quantum_relations(g)),
    ]:
        flag = "  (conjectural)" if triple.conjectural else ""
        print(f"  {name}{flag}")
        for r in triple.to_text():
            print("    ", r)

# The quotient has a monomial basis a^i b^j g^k with i + j + k < g.
for g in range(1, 9):
    p = classical_presentation(g)
    assert p.dimension == comb(g + 2, 3)
    assert poincare_polynomial_invariant(g) == hilbert_series_complete_intersection(g)
    print(f"genus {g}: dim {p.dimension}, graded dims {[n for n in poincare_polynomial_invariant(g) if n]}")

# normal forms
p = classical_presentation(3)
a, b, c = p.basis()[1], p.basis()[2], p.basis()[3]
x = a * a * a
print("genus 3: NF(a^3) =", p.normal_form(x))
print("genus 3: NF(a^2 b^2) =", p.normal_form(a * a * b * b))
