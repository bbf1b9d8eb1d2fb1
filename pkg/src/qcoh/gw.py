"""Line Gromov-Witten invariants of the moduli space, computed two ways.

``gw_direct`` expands ``(4w + X)^a (X^2)^b phi_{i1}...phi_{ir} X^r`` over the
exterior algebra of the Jacobian and substitutes
``X^{2g-1+i} -> (-8)^i / i! w^i`` before integrating over ``J``.

``gw_via_qhn`` multiplies the restricted classes ``a -> 4w + h``,
``b -> h^2``, ``psi_i -> -h phi_i`` in the quantum ring of the projective
bundle ``N``, reducing with ``h^g + c_1 h^{g-1} + ... + c_g = 1`` after every
product, and reads off the top-degree coefficient.

Both use the orientation convention of :mod:`qcoh.jacobian`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, Optional

from .algebra import Element, ExteriorTop, Monomial, Signature, UndefinedSubstitution
from .errors import PreconditionError, VerificationError
from .jacobian import (
    VOLUME_CONVENTION,
    _omega_power,
    extension_chern_classes,
    integrate_J,
    jacobian_signature,
    omega,
    phi_names,
    volume_form,
)


@dataclass(frozen=True)
class GWQuery:
    genus: int
    a: int
    b: int
    psi: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(int(i) for i in self.psi))

    @property
    def degree(self) -> int:
        return 2 * self.a + 4 * self.b + 3 * len(self.psi)

    def validate(self) -> None:
        g = self.genus
        if not isinstance(g, int) or g < 2:
            raise PreconditionError(f"genus must be an integer >= 2, got {g!r}")
        if g < 3:
            raise PreconditionError(
                "the line-invariant formula is not valid for genus 2: h^2 in QH*(N) "
                "differs from beta by a quantum correction"
            )
        if self.a < 0 or self.b < 0:
            raise PreconditionError("insertion counts must be non-negative")
        if self.degree != 6 * g - 2:
            raise PreconditionError(
                f"degree balance violated: 2a + 4b + 3r = {self.degree}, "
                f"expected 6g - 2 = {6 * g - 2} (imbalance {self.degree - (6 * g - 2)})"
            )
        if any(i < 1 or i > 2 * g for i in self.psi):
            raise PreconditionError(f"psi indices must lie in 1..{2 * g}")
        if len(set(self.psi)) != len(self.psi):
            raise PreconditionError("psi indices must be distinct")


# -- direct evaluation --------------------------------------------------------------


@lru_cache(maxsize=None)
def _x_signature(g: int) -> Signature:
    return Signature(
        even=(("X", 2),),
        odd=tuple((n, 1) for n in phi_names(g)),
        truncations=(ExteriorTop(2 * g),),
    )


def x_rule(g: int):
    """``X^{2g-1+i} -> (-8)^i / i! w^i``; undefined below ``2g - 1``."""
    sig = _x_signature(g)

    def rule(k: int) -> Optional[Element]:
        i = k - (2 * g - 1)
        if i < 0:
            return None
        if i > g:
            return sig.zero()
        w = _omega_power(g, i).recast(sig)
        return w.scale(Fraction((-8) ** i, factorial(i)))

    return rule


def x_class(g: int, a: int, b: int, psi=()) -> Element:
    """The class ``(4w + X)^a (X^2)^b phi_{i1}...phi_{ir} X^r`` before substitution."""
    sig = _x_signature(g)
    X = sig.gen("X")
    w = omega(g).recast(sig)
    out = (w.scale(4) + X) ** a * X ** (2 * b + len(psi))
    for i in psi:
        out = out * sig.gen(f"phi{i}")
    return out


def x_substitution_pairing(g: int, a: int, b: int, psi=()) -> Fraction:
    """Evaluate the substitution formula without checking the degree balance."""
    cls = x_class(g, a, b, psi)
    try:
        sub = cls.substitute_even("X", x_rule(g))
    except UndefinedSubstitution as exc:
        raise VerificationError(
            f"term with X^{exc.exponent} (< 2g-1) survived with nonzero exterior part"
        ) from None
    return integrate_J(sub.recast(jacobian_signature(g)), g)


def gw_direct(q: GWQuery) -> Fraction:
    q.validate()
    return x_substitution_pairing(q.genus, q.a, q.b, q.psi)


# -- quantum cohomology of N ----------------------------------------------------------


class NRing:
    """``Lambda H_1[h] / (h^g + c_1 h^{g-1} + ... + c_g = r)``.

    ``r = 1`` is the quantum ring, ``r = 0`` the classical one.  Elements are
    dicts ``h-exponent -> Jacobian class`` with every exponent below ``g``.
    """

    def __init__(self, g: int, quantum: bool = True):
        if not isinstance(g, int) or g < 1:
            raise PreconditionError(f"genus must be an integer >= 1, got {g!r}")
        self.g = g
        self.quantum = quantum
        self.jsig = jacobian_signature(g)
        if g >= 2:
            self.c = extension_chern_classes(g)
        else:
            self.c = [omega(g).scale(4)]
        self.sig = Signature(
            even=(("h", 2),),
            odd=tuple((n, 1) for n in phi_names(g)),
            truncations=(ExteriorTop(2 * g),),
        )

    # conversion

    def from_element(self, x: Element) -> dict:
        if x.sig != self.sig:
            x = x.recast(self.sig)
        out: dict = {}
        for m, c in x.items():
            k = m.exps[0]
            out.setdefault(k, {})[Monomial((), m.odd)] = c
        return self.reduce({k: Element(self.jsig, t) for k, t in out.items()})

    def to_element(self, x: dict) -> Element:
        terms = {}
        for k, cls in x.items():
            for m, c in cls.items():
                terms[Monomial((k,), m.odd)] = c
        return Element(self.sig, terms)

    def h_power(self, n: int) -> dict:
        return self.reduce({n: self.jsig.one()})

    def pullback(self, s: Element) -> dict:
        return {0: s} if s else {}

    # arithmetic

    def reduce(self, x: dict) -> dict:
        g = self.g
        x = {k: v for k, v in x.items() if v}
        while x and max(x) >= g:
            k = max(x)
            t = x.pop(k)
            # h^k = h^{k-g} (r - c_1 h^{g-1} - ... - c_g)
            if self.quantum:
                _add(x, k - g, t)
            for j, cj in enumerate(self.c, start=1):
                _add(x, k - j, -(cj * t))
        return x

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for k1, s1 in x.items():
            for k2, s2 in y.items():
                _add(out, k1 + k2, s1 * s2)
        return self.reduce(out)

    def top_component(self, x: dict) -> Element:
        """Part of ``x`` in degree ``4g - 2`` (a multiple of ``h^{g-1} vol``)."""
        g = self.g
        cls = x.get(g - 1)
        if cls is None:
            return self.jsig.zero()
        return cls.component(2 * g)

    def top_coefficient(self, x: dict) -> Fraction:
        return integrate_J(self.top_component(x), self.g)


def _add(x: dict, k: int, v: Element) -> None:
    if not v:
        return
    if k in x:
        s = x[k] + v
        if s:
            x[k] = s
        else:
            del x[k]
    else:
        x[k] = v


@lru_cache(maxsize=None)
def n_ring(g: int, quantum: bool = True) -> NRing:
    return NRing(g, quantum)


def restricted_classes(g: int) -> dict:
    """Images on ``N``: ``a -> 4w + h``, ``b -> h^2``, ``psi_i -> -h phi_i``."""
    ring = n_ring(g)
    J = ring.jsig
    w4 = omega(g).scale(4)
    table = {"a": {0: w4, 1: J.one()}, "b": {2: J.one()}}
    for i in range(1, 2 * g + 1):
        table[f"psi{i}"] = {1: -J.gen(f"phi{i}")}
    return table


def gw_via_qhn(q: GWQuery) -> Fraction:
    q.validate()
    g = q.genus
    ring = n_ring(g)
    table = restricted_classes(g)
    acc = {0: ring.jsig.one()}
    for name in ["a"] * q.a + ["b"] * q.b + [f"psi{i}" for i in q.psi]:
        acc = ring.multiply(acc, table[name])
    return ring.top_coefficient(acc)


def donaldson_line_value(q: GWQuery) -> Fraction:
    """``D^{c_1}_{S,H}((2 Sigma)^a (-4 pt)^b gamma#...) = (-1)^{g-1} Psi``."""
    v = gw_direct(q)
    return v if (q.genus - 1) % 2 == 0 else -v


def donaldson_classical_value(pairing: Fraction) -> Fraction:
    """Degree-zero counterpart: ``D^{P^1}_{S,H} = -Psi_0`` for a supplied pairing ``Psi_0``.

    The classical pairings on the moduli space are an input here; they are
    not computed by this package.
    """
    return -Fraction(pairing)


def gw_value(q: GWQuery, engine: str = "both") -> Fraction:
    if engine == "direct":
        return gw_direct(q)
    if engine == "qhn":
        return gw_via_qhn(q)
    if engine != "both":
        raise PreconditionError(f"engine must be both, direct or qhn; got {engine!r}")
    d = gw_direct(q)
    n = gw_via_qhn(q)
    if d != n:
        raise VerificationError(f"engines disagree on {q}: direct {d}, qhn {n}")
    return d


# -- query enumeration ------------------------------------------------------------------


def degree_patterns(g: int) -> Iterator[tuple]:
    """All ``(a, b, r)`` with ``2a + 4b + 3r = 6g - 2`` and ``r <= 2g``."""
    total = 6 * g - 2
    for r in range(0, 2 * g + 1, 2):
        rest = total - 3 * r
        if rest < 0:
            break
        for b in range(rest // 4 + 1):
            a2 = rest - 4 * b
            yield (a2 // 2, b, r)


def legal_queries(g: int) -> Iterator[GWQuery]:
    """Every legal query with ``psi`` an ascending subset of ``1..2g``."""
    for a, b, r in degree_patterns(g):
        for psi in combinations(range(1, 2 * g + 1), r):
            yield GWQuery(g, a, b, psi)


def representative_queries(g: int) -> Iterator[GWQuery]:
    """One query per orbit type: ``p`` symplectic pairs and ``s`` unpaired indices."""
    for a, b, r in degree_patterns(g):
        for p in range(r // 2 + 1):
            s = r - 2 * p
            if p + s > g:
                continue
            psi = []
            for i in range(1, p + 1):
                psi += [i, i + g]
            psi += list(range(p + 1, p + s + 1))
            yield GWQuery(g, a, b, tuple(psi))


# -- top components of h-powers ---------------------------------------------------------


@dataclass
class Lemma9Report:
    genus: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _jacobian_monomials(g: int, degree: int) -> Iterator[Element]:
    J = jacobian_signature(g)
    for idx in combinations(range(2 * g), degree):
        mask = 0
        for i in idx:
            mask |= 1 << i
        yield Element._trusted(J, {Monomial((), mask): Fraction(1)})


def verify_lemma9(g: int) -> Lemma9Report:
    """Check the top components of ``h^{g-1+i} s`` (classical) and ``h^{2g-1+i} s`` (quantum)."""
    if not isinstance(g, int) or g < 2:
        raise PreconditionError(f"genus must be an integer >= 2, got {g!r}")
    quantum = n_ring(g, True)
    classical = n_ring(g, False)
    report = Lemma9Report(g)
    for i in range(g + 1):
        wi = _omega_power(g, i)
        segre = wi.scale(Fraction((-4) ** i, factorial(i)))
        qexp = wi.scale(Fraction((-8) ** i, factorial(i)))
        hq = quantum.h_power(2 * g - 1 + i)
        hc = classical.h_power(g - 1 + i)
        for s in _jacobian_monomials(g, 2 * g - 2 * i):
            got_q = quantum.top_component(quantum.multiply(hq, {0: s}))
            got_c = classical.top_component(classical.multiply(hc, {0: s}))
            report.checked += 2
            if got_q != qexp * s:
                report.failures.append(("quantum", i, s.to_text(), got_q.to_text()))
            if got_c != segre * s:
                report.failures.append(("segre", i, s.to_text(), got_c.to_text()))
    return report
