"""Normal forms in quotients of ``Q[a, b, g]`` by a relation triple.

The basis ``a^i b^j g^k`` with ``i + j + k < g`` is known in advance, so
normal forms come from degreewise linear algebra rather than Groebner bases:
in each degree the span of ``m * q_g^i`` is row-reduced with non-basis
monomials pivoting first, which expresses every non-basis monomial through
basis monomials and records the ideal combination used.

Filtered presentations (relations ``Q^i = q_g^i + lower terms``) reduce the
top-degree part with the recorded combinations and recurse on the strictly
lower-degree remainder.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

from .algebra import Element, Monomial, Signature
from .errors import PreconditionError, VerificationError
from .linalg import Echelon, rank
from .relations import ABG, classical_relations, relation_degrees

MODES = ("homogeneous", "filtered")


def monomials_of_degree(d: int) -> list:
    """All ``a^i b^j g^k`` with ``2i + 4j + 6k = d``, degree-lex descending."""
    out = []
    if d < 0 or d % 2:
        return out
    for k in range(d // 6 + 1):
        for j in range((d - 6 * k) // 4 + 1):
            rest = d - 6 * k - 4 * j
            out.append(Monomial((rest // 2, j, k), 0))
    out.sort(key=lambda m: m.exps, reverse=True)
    return out


def _mono_degree(m: Monomial) -> int:
    a, b, c = m.exps
    return 2 * a + 4 * b + 6 * c


def is_basis_monomial(m: Monomial, g: int) -> bool:
    return sum(m.exps) < g


def basis_monomials(g: int) -> list:
    if g < 1:
        raise PreconditionError(f"genus must be >= 1, got {g!r}")
    out = [
        Monomial((i, j, k), 0)
        for i in range(g)
        for j in range(g - i)
        for k in range(g - i - j)
    ]
    out.sort(key=lambda m: (_mono_degree(m), tuple(-e for e in m.exps)))
    return out


def basis(g: int) -> list:
    """Monomial basis of ``Q[a, b, g]/I_g`` as elements, ascending degree."""
    return [Element(ABG, {m: 1}) for m in basis_monomials(g)]


def poincare_polynomial_invariant(g: int) -> list:
    """Graded dimensions of the invariant ring; index = cohomological degree."""
    top = 6 * g - 6
    dims = [0] * (top + 1)
    for m in basis_monomials(g):
        dims[_mono_degree(m)] += 1
    return dims


def hilbert_series_complete_intersection(g: int) -> list:
    """Coefficients of (1-t^{2g})(1-t^{2g+2})(1-t^{2g+4}) / ((1-t^2)(1-t^4)(1-t^6))."""
    top = 6 * g - 6
    n = top + 1
    num = [0] * (n + 2 * g + 8)
    num[0] = 1
    for d in relation_degrees(g):
        new = num[:]
        for i in range(len(num) - d):
            new[i + d] -= num[i]
        num = new
    series = num[:n]
    for d in (2, 4, 6):
        for i in range(d, n):
            series[i] += series[i - d]
    return series


# -- classical reduction tables -------------------------------------------------


class _ClassicalTables:
    """Per-degree reduction data for ``I_g``, built eagerly up to degree ``6g``."""

    def __init__(self, g: int):
        self.g = g
        self.q = classical_relations(g).relations
        self.qdeg = relation_degrees(g)
        self.top = 6 * g
        self.nf: dict = {}  # non-basis monomial -> {basis monomial: coeff}
        self.lift: dict = {}  # non-basis monomial -> {(multiplier, i): coeff}
        self.rank_by_degree: dict = {}
        for d in range(0, self.top + 1, 2):
            self._build(d)

    def _build(self, d: int) -> None:
        g = self.g
        monos = monomials_of_degree(d)
        nonbasis = [m for m in monos if not is_basis_monomial(m, g)]
        basis_ = [m for m in monos if is_basis_monomial(m, g)]
        cols = nonbasis + basis_
        col = {m: i for i, m in enumerate(cols)}
        ech = Echelon(track=True)
        for i, (q, qd) in enumerate(zip(self.q, self.qdeg)):
            for mult in monomials_of_degree(d - qd):
                prod = Element(ABG, {mult: 1}) * q
                ech.add({col[m]: c for m, c in prod.items()}, (mult, i))
        self.rank_by_degree[d] = ech.rank
        nb = len(nonbasis)
        if ech.rank != nb or any(p >= nb for p in ech.pivots):
            raise VerificationError(
                f"genus {g}, degree {d}: ideal has rank {ech.rank}, expected {nb}"
            )
        for p, (row, combo) in ech.pivots.items():
            m = cols[p]
            self.nf[m] = {cols[c]: -v for c, v in row.items() if c != p}
            self.lift[m] = combo


@lru_cache(maxsize=None)
def classical_tables(g: int) -> _ClassicalTables:
    return _ClassicalTables(g)


def default_max_degree(g: int) -> int:
    env = os.environ.get("QCOH_MAX_DEGREE")
    if env:
        return int(env)
    return max(3 * (6 * g - 6), 6 * g, 4 * g + 6)


# -- presentations ----------------------------------------------------------------


class QuotientPresentation:
    """``Q[a, b, g]`` modulo three relations whose leading forms are ``q_g^i``.

    ``mode="homogeneous"`` is the classical ring; ``mode="filtered"`` accepts
    any relations ``q_g^i + (terms of degree deg q_g^i - 4, -8, ...)``.
    """

    def __init__(
        self,
        genus: int,
        relations: Optional[Sequence[Element]] = None,
        mode: str = "homogeneous",
        max_degree: Optional[int] = None,
        label: str = "",
    ):
        if not isinstance(genus, int) or genus < 1:
            raise PreconditionError(f"genus must be an integer >= 1, got {genus!r}")
        if mode not in MODES:
            raise PreconditionError(f"mode must be one of {MODES}, got {mode!r}")
        self.genus = genus
        self.mode = mode
        self.label = label
        q = classical_relations(genus).relations
        rels = tuple(relations) if relations is not None else q
        if len(rels) != 3:
            raise PreconditionError("a presentation needs exactly three relations")
        for i, (r, lead, d) in enumerate(zip(rels, q, relation_degrees(genus)), start=1):
            if r.sig != ABG:
                raise PreconditionError("relations must live in Q[a, b, g]")
            if r.degree() != d or r.component(d) != lead:
                raise PreconditionError(f"relation {i} does not have leading form q_{genus}^{i}")
            if mode == "homogeneous" and not r.is_homogeneous():
                raise PreconditionError("homogeneous mode needs homogeneous relations")
            if any((d - e) % 4 for e in r.degrees()):
                raise PreconditionError(f"relation {i} is not graded mod 4")
        self.relations = rels
        self.max_degree = default_max_degree(genus) if max_degree is None else max_degree
        self._tables = classical_tables(genus)
        self._tails = tuple(r - lead for r, lead in zip(rels, q))
        self._memo: dict = {}
        self._lock = threading.Lock()
        self._basis = basis_monomials(genus)
        self._basis_index = {m: i for i, m in enumerate(self._basis)}

    # -- basic data -------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self._basis)

    def basis(self) -> list:
        return [Element(ABG, {m: 1}) for m in self._basis]

    def basis_monomials(self) -> list:
        return list(self._basis)

    # -- reduction --------------------------------------------------------------

    def _nf_monomial(self, m: Monomial) -> dict:
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        t = self._tables
        d = _mono_degree(m)
        if m in self._basis_index:
            res = {m: Fraction(1)}
        elif d > t.top:
            # m = gen * m0 with deg m0 > 6g - 6, so NF(m) = NF(gen * NF(m0))
            i = next(k for k, e in enumerate(m.exps) if e)
            exps = list(m.exps)
            exps[i] -= 1
            gen = [0, 0, 0]
            gen[i] = 1
            inner = self._nf_monomial(Monomial(tuple(exps), 0))
            res = {}
            for bm, c in inner.items():
                prod = Monomial(tuple(x + y for x, y in zip(bm.exps, gen)), 0)
                _acc(res, self._nf_monomial(prod), c)
        else:
            res = dict(t.nf.get(m, {}))
            if self.mode == "filtered":
                for (mult, i), c in t.lift[m].items():
                    tail = self._tails[i]
                    if tail.is_zero():
                        continue
                    # m = NF(m) + sum c * mult * q_i  ==  NF(m) - sum c * mult * (Q_i - q_i)
                    for tm, tc in tail.items():
                        prod = Monomial(tuple(x + y for x, y in zip(mult.exps, tm.exps)), 0)
                        _acc(res, self._nf_monomial(prod), -c * tc)
        with self._lock:
            self._memo.setdefault(m, res)
        return res

    def normal_form(self, x: Element) -> Element:
        if x.sig != ABG:
            raise PreconditionError("normal_form expects an element of Q[a, b, g]")
        d = x.degree()
        if d is not None and d > self.max_degree:
            raise PreconditionError(
                f"degree {d} exceeds the working bound {self.max_degree} (set max_degree)"
            )
        out: dict = {}
        for m, c in x.items():
            _acc(out, self._nf_monomial(m), c)
        return Element._trusted(ABG, out)

    def product(self, *factors: Element) -> Element:
        result = ABG.one()
        for f in factors:
            result = self.normal_form(result * self.normal_form(f))
        return result

    def contains(self, x: Element) -> bool:
        return self.normal_form(x).is_zero()

    def coordinates(self, x: Element) -> dict:
        """Normal form as ``{basis index: coeff}``."""
        return {self._basis_index[m]: c for m, c in self.normal_form(x).items()}

    # -- checks -----------------------------------------------------------------

    def annihilation_failures(self, degree_bound: Optional[int] = None) -> list:
        """Pairs ``(m, i)`` with ``NF(m * r_i) != 0`` and ``deg(m * q_i) <= bound``.

        Leading forms form a regular sequence, so syzygies are Koszul and are
        generated by ``deg q_i + deg q_j <= 4g + 6``; passing that bound shows
        the basis stays independent in the filtered ring.
        """
        g = self.genus
        bound = 4 * g + 6 if degree_bound is None else degree_bound
        bad = []
        for i, (r, d) in enumerate(zip(self.relations, relation_degrees(g))):
            for e in range(0, bound - d + 1, 2):
                for m in monomials_of_degree(e):
                    if not self.normal_form(Element(ABG, {m: 1}) * r).is_zero():
                        bad.append((m, i + 1))
        return bad

    def quotient_dimension(self, extra: Iterable[Element] = ()) -> int:
        """Dimension after additionally dividing by the ideal generated by ``extra``."""
        rows = []
        for e in extra:
            ne = self.normal_form(e)
            for b in self.basis():
                rows.append(self.coordinates(ne * b))
        return self.dimension - rank(rows)

    def in_ideal_with(self, x: Element, extra: Iterable[Element]) -> bool:
        """Is ``x`` zero once the elements of ``extra`` are also set to zero?"""
        extra = list(extra)
        base = self.quotient_dimension(extra)
        return self.quotient_dimension(extra + [x]) == base

    def __repr__(self):
        return f"QuotientPresentation(genus={self.genus}, mode={self.mode!r})"


def _acc(target: dict, src: dict, c) -> None:
    for k, v in src.items():
        s = target.get(k, 0) + c * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


@lru_cache(maxsize=None)
def classical_presentation(g: int) -> QuotientPresentation:
    return QuotientPresentation(g, mode="homogeneous", label=f"classical I_{g}")


def normal_form(x: Element, p: QuotientPresentation) -> Element:
    return p.normal_form(x)


# -- Sp(2g) decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class SpSummand:
    k: int
    primitive_dim: int
    tensor_genus: int
    ring_dim: int

    @property
    def dimension(self) -> int:
        return self.primitive_dim * self.ring_dim


@dataclass(frozen=True)
class SpDecomposition:
    genus: int
    summands: tuple

    @property
    def total(self) -> int:
        return sum(s.dimension for s in self.summands)


def primitive_dimension(g: int, k: int) -> int:
    return comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)


def sp_decomposition(g: int) -> SpDecomposition:
    if not isinstance(g, int) or g < 1:
        raise PreconditionError(f"genus must be an integer >= 1, got {g!r}")
    summands = []
    for k in range(g + 1):
        r = g - k
        summands.append(SpSummand(k, primitive_dimension(g, k), r, comb(r + 2, 3)))
    return SpDecomposition(g, tuple(summands))


def psi_signature(g: int) -> Signature:
    return _psi_signature(g)


@lru_cache(maxsize=None)
def _psi_signature(g: int) -> Signature:
    return Signature(odd=tuple((f"psi{i}", 3) for i in range(1, 2 * g + 1)))


def primitive_dimension_direct(g: int, k: int) -> int:
    """``dim ker(gamma^{g-k+1} : Lambda^k H^3 -> Lambda^{2g-k+2} H^3)`` by row reduction."""
    from itertools import combinations

    sig = psi_signature(g)
    psi = sig.gens()
    gamma = sig.zero()
    for i in range(g):
        gamma = gamma - (psi[i] * psi[i + g]).scale(2)
    power = gamma ** (g - k + 1)
    rows = []
    for idx in combinations(range(2 * g), k):
        mask = 0
        for i in idx:
            mask |= 1 << i
        img = power * Element(sig, {Monomial((), mask): 1})
        rows.append({m.odd: c for m, c in img.items()})
    return comb(2 * g, k) - rank(rows)
