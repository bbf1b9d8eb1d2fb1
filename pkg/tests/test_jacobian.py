from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcoh.errors import PreconditionError
from qcoh.jacobian import (
    character_from_chern_classes,
    chern_classes_from_character,
    extension_chern_classes,
    grr_extension_chern_character,
    integrate_J,
    jacobian_signature,
    omega,
    pushforward_sigma,
    surface_jacobian_signature,
    universal_c1,
    volume_form,
)


@pytest.mark.parametrize("g", range(1, 7))
def test_omega_top_power(g):
    assert integrate_J(omega(g) ** g) == factorial(g)
    assert integrate_J(volume_form(g)) == 1
    assert (omega(g) ** (g + 1)).is_zero()


def test_volume_orientation_genus_two():
    sig = jacobian_signature(2)
    assert integrate_J(sig.monomial(odd=["phi1", "phi3", "phi2", "phi4"])) == 1
    assert integrate_J(sig.monomial(odd=["phi1", "phi2", "phi3", "phi4"])) == -1


@pytest.mark.parametrize("g", range(2, 9))
def test_grr(g):
    ch = grr_extension_chern_character(g)
    w = omega(g)
    assert ch == w.scale(4) + g
    assert ch.scale(2) == w.scale(8) + 2 * g


@pytest.mark.parametrize("g", range(2, 7))
def test_c1_squared(g):
    c1 = universal_c1(g)
    sig = c1.sig
    assert c1 * c1 == (sig.gen("Sigma") * omega(g).recast(sig)).scale(-2)
    assert (c1 * c1 * c1).is_zero()
    assert pushforward_sigma(c1 * c1) == omega(g).scale(-2)


@pytest.mark.parametrize("g", range(2, 7))
def test_chern_classes(g):
    cs = extension_chern_classes(g)
    w = omega(g)
    for i, ci in enumerate(cs, start=1):
        assert ci == (w**i).scale(Fraction(4**i, factorial(i)))


@pytest.mark.parametrize("g", range(2, 6))
def test_newton_round_trip(g):
    ch = grr_extension_chern_character(g)
    cs = chern_classes_from_character(ch, g)
    assert character_from_chern_classes(g, cs, g) == ch


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_newton_round_trip_random(coeffs):
    g = 3
    w = omega(g)
    J = jacobian_signature(g)
    phi = J.gens()
    ch = J.const(2) + w.scale(coeffs[0]) + (phi[0] * phi[1]).scale(coeffs[1]) + (w * w).scale(coeffs[2])
    cs = chern_classes_from_character(ch, g)
    assert character_from_chern_classes(2, cs, g) == ch


def test_grr_trace():
    trace = []
    grr_extension_chern_character(3, trace)
    assert trace[-1].endswith("True")
    assert len(trace) == 5


def test_surface_truncation():
    sig = surface_jacobian_signature(2)
    assert (sig.gen("gamma1") * sig.gen("gamma2") * sig.gen("gamma3")).is_zero()


def test_genus_guards():
    with pytest.raises(PreconditionError):
        grr_extension_chern_character(1)
    with pytest.raises(PreconditionError):
        pushforward_sigma(omega(2))
