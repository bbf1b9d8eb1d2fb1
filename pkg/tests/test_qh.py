from itertools import product
from math import comb

import pytest
import sympy

import oracles
from qcoh.errors import PreconditionError
from qcoh.qh import (
    InvariantQuantumRing,
    cor20_assembly,
    gamma_cubed_combination,
    hat_class_table,
    hat_text,
    hypothetical_ring,
    parse_hat,
    prop19_exclusion_check,
    prop19_identity_check,
    quantum_product,
    quantum_ring,
    twisted_relations,
)
from qcoh.quotient import classical_presentation
from qcoh.relations import ABG, quantum_relations

a, b, c = ABG.gens()


def test_hat_table():
    assert (hat_class_table(1).r, hat_class_table(1).s) == (-8, 0)
    assert (hat_class_table(2).r, hat_class_table(2).s) == (4, -4)
    assert (hat_class_table(3).r, hat_class_table(3).s) == (0, None)
    assert hat_class_table(5).describe()["s_g"] == "unknown"
    assert hat_class_table(3).describe()["bh"] == "b"


def test_genus_one_ring():
    ring = quantum_ring(1)
    assert ring.dimension == 1
    assert ring.normal_form(b) == ABG.const(-8)


def test_genus_two_products():
    ring = quantum_ring(2)
    assert hat_text(ring.product(a, a)) == "-bh + 8"
    assert hat_text(ring.product(a, b)) == "-gh - 8*ah"
    assert ring.product(a, c).is_zero()


def test_genus_three_products():
    ring = quantum_ring(3)
    assert ring.product(c, c, c).is_zero()
    assert ring.product(c, c, c, c).is_zero()
    assert not ring.product(c, b - 8).is_zero()
    assert ring.product(c, a, a) == -ring.product(c, b + 8)
    # the actual value of gh^2 (bh - 8)
    assert ring.product(c, c, b - 8) == (c * c).scale(-16)


def test_genus_three_values_against_groebner():
    gb = oracles.groebner(quantum_relations(3).relations)
    A, B, G = oracles.GENS
    assert oracles.in_ideal(G**3, gb)
    assert oracles.in_ideal(G**4, gb)
    assert oracles.in_ideal(G**2 * (B - 8) + 16 * G**2, gb)
    assert not oracles.in_ideal(G**2 * (B - 8), gb)
    assert not oracles.in_ideal(G * (B - 8), gb)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_ring_axioms_on_basis(g):
    ring = quantum_ring(g)
    B = ring.basis()
    for x, y in product(B, repeat=2):
        assert ring.product(x, y) == ring.product(y, x)
    for x, y, z in product(B, repeat=3):
        assert ring.product(ring.product(x, y), z) == ring.product(x, ring.product(y, z))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_mod4_and_associated_graded(g):
    ring = quantum_ring(g)
    classical = classical_presentation(g)
    for x, y in product(ring.basis(), repeat=2):
        d = x.degree() + y.degree()
        p = ring.product(x, y)
        assert all((d - e) % 4 == 0 for e in p.degrees())
        assert p.component(d) == classical.normal_form(x * y)


def test_conjectural_guard():
    with pytest.raises(PreconditionError):
        InvariantQuantumRing(4)
    ring = InvariantQuantumRing(4, conjectural=True)
    assert ring.conjectural
    assert ring.dimension == comb(6, 3)
    with pytest.raises(PreconditionError):
        quantum_product(4, a, a)
    assert quantum_product(4, a, a, conjectural=True) == a * a


def test_parse_hat():
    assert parse_hat("ah^2 + bh - 8") == a * a + b - 8
    assert parse_hat("gh*ah") == a * c


def test_free_identity():
    assert c**3 == gamma_cubed_combination()
    expr = oracles.to_sympy(gamma_cubed_combination())
    A, B, G = oracles.GENS
    assert sympy.expand(expr - G**3) == 0


def test_identity_report():
    rep = prop19_identity_check()
    assert rep.passed, [ch.label for ch in rep.checks if not ch.passed]
    assert "actual genus-3 ring: gh^2 (bh - 8) = -16*gh^2" in rep.trace


def test_exclusion_report():
    rep = prop19_exclusion_check()
    assert rep.passed, [ch.label for ch in rep.checks if not ch.passed]
    assert "y=1: dim Q[ah,bh,gh]/(J', gh^4) = 2" in rep.trace
    assert "x=1: dim Q[ah,bh,gh]/(J', gh^4) = 6" in rep.trace


def test_hypothetical_rings_keep_dimension():
    for x, y in [(1, 0), (0, 1), (2, -3)]:
        assert hypothetical_ring(x, y).dimension == 10


def test_y_branch_sign():
    # ah * Q^1 with ah^4 removed carries -24 ah^2
    Q1 = quantum_relations(3)[0]
    assert a * Q1 - a**4 == ABG.parse("5*a^2*b - 24*a^2 + 4*a*g")


def test_cor20_ambient():
    summands = cor20_assembly()
    assert [s.ring_dim for s in summands] == [10, 4, 1]
    assert [s.primitive_dim for s in summands] == [1, 6, 14]
    assert sum(s.dimension for s in summands) == 48
    assert [hat_text(r) for r in summands[1].relations] == ["ah^2 + bh + 8", "ah*bh + gh - 8*ah", "ah*gh"]
    assert summands[2].relations == (a, b + 8, c)


def test_cor20_summand_convention():
    rels = twisted_relations(2, 3, "summand")
    assert rels == quantum_relations(2).relations
    assert sum(s.dimension for s in cor20_assembly(3, "summand")) == 48
    with pytest.raises(PreconditionError):
        twisted_relations(2, 3, "other")
    with pytest.raises(PreconditionError):
        cor20_assembly(4)
