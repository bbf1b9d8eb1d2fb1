from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcoh.algebra import (
    Element,
    ExteriorTop,
    Monomial,
    Signature,
    UndefinedSubstitution,
    reorder_sign,
    sort_sign,
)
from qcoh.errors import PreconditionError
from qcoh.jacobian import jacobian_signature, surface_jacobian_signature

MIXED = Signature(even=(("a", 2), ("b", 4)), odd=(("x", 1), ("y", 3), ("z", 1)))
EXT = jacobian_signature(3)
SURF = surface_jacobian_signature(2)

coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def elements(sig, max_terms=4, max_exp=2):
    n_even = len(sig.even)
    n_odd = len(sig.odd)
    monos = st.builds(
        Monomial,
        st.tuples(*[st.integers(0, max_exp)] * n_even) if n_even else st.just(()),
        st.integers(0, (1 << n_odd) - 1),
    )
    return st.dictionaries(monos, coefficients, max_size=max_terms).map(
        lambda d: Element(sig, d).truncate()
    )


def homogeneous_parts(x):
    return list(x.components().items())


any_sig = st.sampled_from([MIXED, EXT, SURF])
triples = any_sig.flatmap(lambda s: st.tuples(elements(s), elements(s), elements(s)))


def test_example_arithmetic():
    a, b = MIXED.gens("a", "b")
    assert ((a + b) ** 2).to_text() == "b^2 + 2*a*b + a^2"
    x = MIXED.parse("a^2*b + 4/3*a + b^2")
    assert x.to_text() == "a^2*b + b^2 + 4/3*a"


def test_odd_square_is_zero():
    x, y = MIXED.gens("x", "y")
    assert (x * x).is_zero()
    assert x * y == -(y * x)


def test_exterior_truncation():
    phi = EXT.gens()
    assert (phi[0] * phi[1] * phi[2] * phi[3] * phi[4] * phi[5]).is_zero() is False
    small = Signature(odd=(("u", 1), ("v", 1), ("w", 1)), truncations=(ExteriorTop(2),))
    u, v, w = small.gens()
    assert (u * v * w).is_zero()


def test_surface_rule():
    g1, g2, g3, g4 = SURF.gens("gamma1", "gamma2", "gamma3", "gamma4")
    sigma = SURF.gen("Sigma")
    assert g1 * g3 == sigma
    assert g3 * g1 == -sigma
    assert (g1 * g2).is_zero()
    assert (g1 * g3 * g2).is_zero()
    assert (sigma * sigma).is_zero()
    assert (sigma * g1).is_zero()


def test_reorder_sign_examples():
    # (x1) * (x0) -> -x0 x1
    assert reorder_sign(0b10, 0b01) == -1
    assert reorder_sign(0b01, 0b10) == 1
    assert reorder_sign(0b101, 0b010) == -1


@given(st.lists(st.integers(0, 7), min_size=0, max_size=6, unique=True))
def test_sort_sign_matches_inversions(idx):
    inv = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    sign, mask = sort_sign(idx)
    assert sign == (-1) ** inv
    assert mask == sum(1 << i for i in idx)


def test_sort_sign_repeat():
    assert sort_sign([1, 2, 1]) == (0, 0)


@given(triples)
def test_associativity(t):
    x, y, z = t
    assert (x * y) * z == x * (y * z)


@given(triples)
def test_distributivity(t):
    x, y, z = t
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@given(triples)
def test_graded_commutativity(t):
    # Koszul sign law on homogeneous pieces
    x, y, _ = t
    for d1, xs in homogeneous_parts(x):
        for d2, ys in homogeneous_parts(y):
            assert xs * ys == (ys * xs).scale((-1) ** (d1 * d2))


@given(triples)
def test_degree_additivity(t):
    x, y, _ = t
    for d1, xs in homogeneous_parts(x):
        for d2, ys in homogeneous_parts(y):
            p = xs * ys
            assert p.is_zero() or p.degree() == d1 + d2


@given(any_sig.flatmap(elements))
def test_text_round_trip(x):
    assert x.sig.parse(x.to_text()) == x


@given(any_sig.flatmap(elements))
def test_json_round_trip(x):
    assert x.sig.from_json(x.to_json()) == x


@given(any_sig.flatmap(elements))
def test_canonical_form_is_stable(x):
    assert Element(x.sig, x.terms).truncate() == x
    assert x - x == x.sig.zero()
    assert x + x.sig.zero() == x


def test_odd_generators_anticommute_exhaustively():
    names = ["x", "y", "z"]
    base = MIXED.monomial(odd=names)
    for p in permutations(names):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if names.index(p[i]) > names.index(p[j]))
        prod = MIXED.one()
        for n in p:
            prod = prod * MIXED.gen(n)
        assert prod == base.scale((-1) ** inv)


def test_parser_features():
    a, b = MIXED.gens("a", "b")
    assert MIXED.parse("(a + b)^2 - 2*a*b") == a * a + b * b
    assert MIXED.parse("a/2") == a.scale(Fraction(1, 2))
    assert MIXED.parse("-3") == MIXED.const(-3)
    assert MIXED.parse("t*a", {"t": b}) == a * b


@pytest.mark.parametrize("bad", ["a +", "q", "a**-1", "a/b", "import os"])
def test_parser_rejects(bad):
    with pytest.raises(ValueError):
        MIXED.parse(bad)


def test_signature_mismatch():
    with pytest.raises(PreconditionError):
        MIXED.gen("a") * EXT.gen("phi1")


def test_substitute_even():
    sig = Signature(even=(("X", 2),))
    X = sig.gen("X")
    rule = lambda k: sig.const(k) if k >= 2 else None  # noqa: E731
    assert (X**3 + X**2).substitute_even("X", rule) == sig.const(5)
    with pytest.raises(UndefinedSubstitution) as e:
        (X + X**3).substitute_even("X", rule)
    assert e.value.exponent == 1


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature(even=(("a", 3),))
    with pytest.raises(ValueError):
        Signature(odd=(("a", 2),))
    with pytest.raises(ValueError):
        Signature(even=(("a", 2),), odd=(("a", 1),))


def test_zero_degree_is_none():
    assert MIXED.zero().degree() is None
    assert MIXED.one().degree() == 0
