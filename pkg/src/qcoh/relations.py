"""Recursive relation triples for the invariant rings.

Three flavors share the polynomial ring ``Q[a, b, g]`` (degrees 2, 4, 6):

* ``classical`` -- the homogeneous generators ``q_g^i`` of the ideal of
  relations of the invariant cohomology ring;
* ``floer`` -- the inhomogeneous generators ``R_g^i`` whose leading terms are
  the classical ones;
* ``quantum`` -- the sign-twisted ``R_g^i`` in hatted variables.  The hatted
  generators reuse the same signature; only the spelling differs when
  printed (``ah, bh, gh``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import Element, Signature
from .errors import PreconditionError

ABG = Signature(even=(("a", 2), ("b", 4), ("g", 6)))
HAT_NAMES = {"a": "ah", "b": "bh", "g": "gh"}

FLAVORS = ("classical", "floer", "quantum")


def relation_degrees(g: int) -> tuple:
    return (2 * g, 2 * g + 2, 2 * g + 4)


@dataclass(frozen=True)
class RelationTriple:
    genus: int
    flavor: str
    relations: tuple
    conjectural: bool = False

    @property
    def r1(self) -> Element:
        return self.relations[0]

    @property
    def r2(self) -> Element:
        return self.relations[1]

    @property
    def r3(self) -> Element:
        return self.relations[2]

    def __iter__(self):
        return iter(self.relations)

    def __getitem__(self, i):
        return self.relations[i]

    @property
    def hatted(self) -> bool:
        return self.flavor == "quantum"

    def rename(self) -> Optional[dict]:
        return HAT_NAMES if self.hatted else None

    def to_text(self) -> list:
        return [r.to_text(self.rename()) for r in self.relations]


def _check_genus(g: int, low: int = 1) -> None:
    if not isinstance(g, int) or g < low:
        raise PreconditionError(f"genus must be an integer >= {low}, got {g!r}")


@lru_cache(maxsize=None)
def _classical(g: int) -> tuple:
    a, b, c = ABG.gens()
    q = (a, b, c)
    for k in range(1, g):
        q = (
            a * q[0] + q[1].scale(k * k),
            b * q[0] + q[2].scale(Fraction(2 * k, k + 1)),
            c * q[0],
        )
    return q


@lru_cache(maxsize=None)
def _floer(g: int) -> tuple:
    a, b, c = ABG.gens()
    R = (ABG.one(), ABG.zero(), ABG.zero())
    for k in range(0, g):
        sign = 8 if (k + 1) % 2 == 0 else -8
        R = (
            a * R[0] + R[1].scale(k * k),
            (b + sign) * R[0] + R[2].scale(Fraction(2 * k, k + 1)),
            c * R[0],
        )
    return R


def classical_relations(g: int) -> RelationTriple:
    _check_genus(g)
    return RelationTriple(g, "classical", _classical(g))


def floer_relations(g: int) -> RelationTriple:
    _check_genus(g)
    return RelationTriple(g, "floer", _floer(g))


def hat_transform(g: int, x: Element, base_degree: int) -> Element:
    """Negate the components of degree ``base_degree - 4 (mod 8)`` when ``g`` is odd."""
    if g % 2 == 0:
        return x
    sig = x.sig
    target = (base_degree - 4) % 8
    return Element._trusted(
        sig, {m: (-c if sig.degree(m) % 8 == target else c) for m, c in x.items()}
    )


def quantum_relations(g: int) -> RelationTriple:
    """Hat-twisted Floer relations; proven for ``g <= 3``, conjectural beyond."""
    _check_genus(g)
    R = _floer(g)
    degs = relation_degrees(g)
    Q = tuple(hat_transform(g, r, d) for r, d in zip(R, degs))
    return RelationTriple(g, "quantum", Q, conjectural=g >= 4)


def two_leading_terms(g: int, i: int) -> tuple:
    """Top component and first correction (four degrees lower) of ``Q_g^i``."""
    _check_genus(g, 3)
    if i not in (1, 2, 3):
        raise PreconditionError(f"relation index must be 1, 2 or 3, got {i!r}")
    d = relation_degrees(g)[i - 1]
    Q = quantum_relations(g)[i - 1]
    return Q.component(d), Q.component(d - 4)
