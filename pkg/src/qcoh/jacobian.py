"""Exterior algebra of the Jacobian, the surface-Jacobian product and GRR.

Orientation: the fundamental class of ``J`` pairs to 1 with
``phi1^phi(1+g)^phi2^phi(2+g)^...^phig^phi(2g)``, so ``<omega^g, [J]> = g!``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import Element, ExteriorTop, Monomial, Signature, SurfaceRule, sort_sign
from .errors import PreconditionError, VerificationError

VOLUME_CONVENTION = "vol(J): phi1^phi(1+g)^phi2^phi(2+g)^...^phig^phi(2g)"


def _check(g: int, low: int = 1) -> None:
    if not isinstance(g, int) or g < low:
        raise PreconditionError(f"genus must be an integer >= {low}, got {g!r}")


def phi_names(g: int) -> list:
    return [f"phi{i}" for i in range(1, 2 * g + 1)]


@lru_cache(maxsize=None)
def jacobian_signature(g: int) -> Signature:
    _check(g)
    return Signature(odd=tuple((n, 1) for n in phi_names(g)), truncations=(ExteriorTop(2 * g),))


@lru_cache(maxsize=None)
def omega(g: int) -> Element:
    """``sum_i phi_i ^ phi_{i+g}``."""
    sig = jacobian_signature(g)
    phi = sig.gens()
    w = sig.zero()
    for i in range(g):
        w = w + phi[i] * phi[i + g]
    return w


@lru_cache(maxsize=None)
def _omega_power(g: int, k: int) -> Element:
    return omega(g) ** k


@lru_cache(maxsize=None)
def volume_sign(g: int) -> int:
    order = []
    for i in range(g):
        order += [i, i + g]
    sign, _ = sort_sign(order)
    return sign


def integrate_J(x: Element, g: int | None = None) -> Fraction:
    """Pair a class on ``J`` (by generator names) with the fundamental class."""
    sig = x.sig
    if g is None:
        g = len(sig.odd) // 2
    idx = [sig.odd_index.get(n) for n in phi_names(g)]
    if None in idx or len(sig.odd) != 2 * g:
        raise PreconditionError("integrate_J needs exactly the odd generators phi1..phi2g")
    full = 0
    for i in idx:
        full |= 1 << i
    # reading the top monomial in signature order vs ascending phi order
    sign, _ = sort_sign(idx)
    zero = Monomial(sig._zero_exps, 0)
    c = x.coefficient(Monomial(zero.exps, full))
    return c * sign * volume_sign(g)


def volume_form(g: int) -> Element:
    sig = jacobian_signature(g)
    return sig.monomial(odd=[n for i in range(g) for n in (f"phi{i + 1}", f"phi{i + 1 + g}")])


# -- surface x Jacobian ---------------------------------------------------------


def gamma_names(g: int) -> list:
    return [f"gamma{i}" for i in range(1, 2 * g + 1)]


@lru_cache(maxsize=None)
def surface_jacobian_signature(g: int) -> Signature:
    _check(g)
    return Signature(
        even=(("Sigma", 2),),
        odd=tuple((n, 1) for n in gamma_names(g) + phi_names(g)),
        truncations=(SurfaceRule(tuple(gamma_names(g)), "Sigma"),),
    )


def universal_c1(g: int) -> Element:
    """``c_1(L) = sum_i gamma_i (x) phi_i``."""
    sig = surface_jacobian_signature(g)
    out = sig.zero()
    for i in range(1, 2 * g + 1):
        out = out + sig.gen(f"gamma{i}") * sig.gen(f"phi{i}")
    return out


def pushforward_sigma(x: Element, g: int | None = None) -> Element:
    """Integrate over the surface factor: keep the coefficient of ``Sigma``."""
    sig = x.sig
    if g is None:
        g = len(sig.odd) // 4
    if sig != surface_jacobian_signature(g):
        raise PreconditionError("pushforward_sigma expects a surface-Jacobian class")
    pidx = sig.even_index["Sigma"]
    smask = (1 << (2 * g)) - 1
    kept = {}
    for m, c in x.items():
        if m.exps[pidx] == 1 and not m.odd & smask:
            kept[Monomial((0,), m.odd)] = c
    return Element(sig, kept).recast(jacobian_signature(g))


def grr_extension_chern_character(g: int, trace: list | None = None) -> Element:
    """``ch(E) = -p_*((ch L)^2 (ch Lambda)^{-1} Todd T_Sigma)`` evaluated exactly.

    ``Lambda`` has class ``Sigma`` and ``K = (2g-2) Sigma``.  If ``trace`` is a
    list, the displayed lines of the computation are appended to it.
    """
    _check(g, 2)
    sig = surface_jacobian_signature(g)
    c1 = universal_c1(g)
    sigma = sig.gen("Sigma")
    if not (c1 * c1 * c1).is_zero():
        raise VerificationError("c_1(L)^3 should vanish on the surface")
    ch_L = sig.one() + c1 + (c1 * c1).scale(Fraction(1, 2))
    ch_L2 = ch_L * ch_L
    inv_ch_lambda = sig.one() - sigma
    K = sigma.scale(2 * g - 2)
    todd = sig.one() - K.scale(Fraction(1, 2))
    product = ch_L2 * inv_ch_lambda * todd
    result = -pushforward_sigma(product, g)
    if trace is not None:
        w = omega(g)
        trace.append(f"c_1(L)^2 = {(c1 * c1).to_text()}")
        trace.append(f"(ch L)^2 = {ch_L2.to_text()}")
        trace.append(f"(ch L)^2 (1 - Lambda)(1 - K/2) = {product.to_text()}")
        trace.append(f"ch(E) = -p_*(...) = {result.to_text()}")
        trace.append(f"       = {g} + 4*omega : {result == w.scale(4) + g}")
    return result


# -- characteristic classes ---------------------------------------------------------


def chern_classes_from_character(ch: Element, g: int) -> list:
    """Elementary classes ``c_1..c_g`` from a Chern character by Newton's identities."""
    comps = ch.components()
    power_sums = {}
    for k in range(1, g + 1):
        chk = comps.get(2 * k, ch.sig.zero())
        power_sums[k] = chk.scale(factorial(k))
    e = [ch.sig.one()]
    for k in range(1, g + 1):
        acc = ch.sig.zero()
        for j in range(1, k + 1):
            term = e[k - j] * power_sums[j]
            acc = acc + (term if j % 2 else -term)
        e.append(acc.scale(Fraction(1, k)))
    return e[1:]


def character_from_chern_classes(rank_: int, classes: list, g: int) -> Element:
    """Inverse Newton step: ``rank + sum_k p_k / k!`` from ``c_1..c_g``."""
    sig = classes[0].sig if classes else jacobian_signature(g)
    e = [sig.one()] + list(classes) + [sig.zero()] * max(0, g - len(classes))
    p: dict = {}
    for k in range(1, g + 1):
        # p_k = sum_{j<k} (-1)^{j-1} e_j p_{k-j} + (-1)^{k-1} k e_k
        acc = e[k].scale(k if k % 2 else -k)
        for j in range(1, k):
            term = e[j] * p[k - j]
            acc = acc + (term if j % 2 else -term)
        p[k] = acc
    ch = sig.const(rank_)
    for k in range(1, g + 1):
        ch = ch + p[k].scale(Fraction(1, factorial(k)))
    return ch


def extension_chern_classes(g: int) -> list:
    """``c_i(E) = 4^i / i! omega^i`` for ``i = 1..g``."""
    return chern_classes_from_character(grr_extension_chern_character(g), g)
