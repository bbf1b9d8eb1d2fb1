"""Sparse graded-commutative algebra over Q.

Every ring in the package is an instance of the same kernel: a free
graded-commutative algebra on named even and odd generators, optionally
followed by a truncation rule (exterior top degree, or the cohomology ring
of a surface).  Coefficients are :class:`fractions.Fraction` throughout.

A monomial is a pair ``(exps, odd)`` where ``exps`` is a tuple of even
exponents in signature order and ``odd`` is a bit set over the odd
generators.  The odd part is always stored in ascending generator order; the
sign produced by sorting is pushed into the coefficient.

>>> S = Signature(even=(("a", 2), ("b", 4)), odd=(("x", 1), ("y", 1)))
>>> x, y = S.gen("x"), S.gen("y")
>>> (y * x).to_text()
'-x*y'
>>> (x * x).is_zero()
True
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from .errors import PreconditionError

Scalar = Union[int, Fraction]


class Monomial(NamedTuple):
    exps: tuple
    odd: int


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reorder_sign(left: int, right: int) -> int:
    """Sign of sorting the concatenation of two ascending odd parts."""
    swaps = 0
    for b in _bits(right):
        swaps += (left >> (b + 1)).bit_count()
    return -1 if swaps & 1 else 1


def sort_sign(indices: Iterable[int]) -> tuple[int, int]:
    """Return ``(sign, mask)`` for an ordered product of odd generators.

    The sign is zero if an index repeats.
    """
    mask = 0
    sign = 1
    for i in indices:
        bit = 1 << i
        if mask & bit:
            return 0, 0
        if (mask >> (i + 1)).bit_count() & 1:
            sign = -sign
        mask |= bit
    return sign, mask


# -- truncation rules ---------------------------------------------------------


@dataclass(frozen=True)
class ExteriorTop:
    """Kill every monomial whose odd part has degree above ``limit``."""

    limit: int

    def apply(self, sig: "Signature", exps: tuple, odd: int):
        if sig.odd_degree(odd) > self.limit:
            return None
        return 1, exps, odd


@dataclass(frozen=True)
class SurfaceRule:
    """Cohomology of a closed surface with symplectic basis.

    ``surface`` lists the odd degree-1 generators ``gamma_1..gamma_{2g}``;
    ``point`` names the even degree-2 class of the surface.  Products of
    three or more surface generators vanish, ``gamma_i gamma_{i+g} = point``
    and every other product of two distinct surface generators is zero.
    """

    surface: tuple
    point: str

    def apply(self, sig: "Signature", exps: tuple, odd: int):
        info = sig._surface_info(self)
        smask, pairs, pidx = info
        s = odd & smask
        npt = exps[pidx]
        count = s.bit_count() + 2 * npt
        if count <= 1 or (count == 2 and npt == 1):
            return 1, exps, odd
        if count > 2:
            return None
        # exactly two surface generators: they must be a symplectic pair
        if s not in pairs:
            return None
        rest = odd & ~s
        sign = 1
        for b in _bits(s):
            # move the pair to the front of the odd word
            if (rest & ((1 << b) - 1)).bit_count() & 1:
                sign = -sign
        lst = list(exps)
        lst[pidx] = 1
        return sign, tuple(lst), rest


Truncation = Union[ExteriorTop, SurfaceRule]


# -- signature ----------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Generators, degrees and truncation rules of a graded algebra."""

    even: tuple = ()
    odd: tuple = ()
    truncations: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "even", tuple((str(n), int(d)) for n, d in self.even))
        object.__setattr__(self, "odd", tuple((str(n), int(d)) for n, d in self.odd))
        object.__setattr__(self, "truncations", tuple(self.truncations))
        names = [n for n, _ in self.even] + [n for n, _ in self.odd]
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be unique: {names}")
        for n, d in self.even:
            if d <= 0 or d % 2:
                raise ValueError(f"even generator {n} needs a positive even degree, got {d}")
        for n, d in self.odd:
            if d <= 0 or d % 2 == 0:
                raise ValueError(f"odd generator {n} needs a positive odd degree, got {d}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"generator name {n!r} is not an identifier")

    @cached_property
    def even_index(self) -> dict:
        return {n: i for i, (n, _) in enumerate(self.even)}

    @cached_property
    def odd_index(self) -> dict:
        return {n: i for i, (n, _) in enumerate(self.odd)}

    @cached_property
    def even_degrees(self) -> tuple:
        return tuple(d for _, d in self.even)

    @cached_property
    def odd_degrees(self) -> tuple:
        return tuple(d for _, d in self.odd)

    @cached_property
    def _uniform_odd(self) -> Optional[int]:
        degs = set(self.odd_degrees)
        return degs.pop() if len(degs) == 1 else None

    @cached_property
    def _zero_exps(self) -> tuple:
        return (0,) * len(self.even)

    def odd_degree(self, odd: int) -> int:
        u = self._uniform_odd
        if u is not None:
            return u * odd.bit_count()
        return sum(self.odd_degrees[b] for b in _bits(odd))

    def degree(self, m: Monomial) -> int:
        d = self.odd_degree(m[1]) if m[1] else 0
        for e, w in zip(m[0], self.even_degrees):
            d += e * w
        return d

    def _surface_info(self, rule: SurfaceRule):
        cache = self.__dict__.setdefault("_surface_cache", {})
        info = cache.get(rule)
        if info is None:
            idx = [self.odd_index[n] for n in rule.surface]
            g = len(idx) // 2
            smask = 0
            for i in idx:
                smask |= 1 << i
            pairs = set()
            for i in range(g):
                lo, hi = idx[i], idx[i + g]
                if lo > hi:
                    raise ValueError("surface generators must be listed in ascending order")
                pairs.add((1 << lo) | (1 << hi))
            info = (smask, frozenset(pairs), self.even_index[rule.point])
            cache[rule] = info
        return info

    def names(self) -> list:
        return [n for n, _ in self.even] + [n for n, _ in self.odd]

    # -- element construction ---------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return self.const(1)

    def const(self, c: Scalar) -> "Element":
        return Element(self, {Monomial(self._zero_exps, 0): Fraction(c)})

    def gen(self, name: str) -> "Element":
        if name in self.even_index:
            exps = list(self._zero_exps)
            exps[self.even_index[name]] = 1
            m = Monomial(tuple(exps), 0)
        elif name in self.odd_index:
            m = Monomial(self._zero_exps, 1 << self.odd_index[name])
        else:
            raise KeyError(f"no generator {name!r} in signature")
        return Element(self, {m: Fraction(1)}).truncate()

    def gens(self, *names: str) -> tuple:
        return tuple(self.gen(n) for n in (names or self.names()))

    def monomial(self, even: Mapping[str, int] | None = None, odd: Iterable[str] = ()) -> "Element":
        """Coefficient-one element ``prod even^e * odd_1*...*odd_k`` (sign from ordering)."""
        exps = list(self._zero_exps)
        for n, e in (even or {}).items():
            if e < 0:
                raise ValueError("negative exponent")
            exps[self.even_index[n]] = int(e)
        sign, mask = sort_sign(self.odd_index[n] for n in odd)
        if sign == 0:
            return self.zero()
        return Element(self, {Monomial(tuple(exps), mask): Fraction(sign)}).truncate()

    def parse(self, text: str, bindings: Mapping[str, "Element"] | None = None) -> "Element":
        return parse_element(self, text, bindings)

    def from_json(self, data) -> "Element":
        return element_from_json(self, data)


# -- elements -----------------------------------------------------------------


class Element:
    """Immutable sparse linear combination of monomials with rational coefficients."""

    __slots__ = ("sig", "_terms", "_hash")

    def __init__(self, sig: Signature, terms: Mapping[Monomial, Scalar] | None = None):
        self.sig = sig
        clean = {}
        for m, c in (terms or {}).items():
            if c:
                clean[Monomial(*m)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, sig: Signature, terms: dict) -> "Element":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(Monomial(self.sig._zero_exps, 0))

    def degrees(self) -> list:
        return sorted({self.sig.degree(m) for m in self._terms})

    def degree(self) -> Optional[int]:
        """Top total degree, or ``None`` for zero."""
        ds = self.degrees()
        return ds[-1] if ds else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, d: int) -> "Element":
        sig = self.sig
        return Element._trusted(sig, {m: c for m, c in self._terms.items() if sig.degree(m) == d})

    def components(self) -> dict:
        out: dict = {}
        for m, c in self._terms.items():
            out.setdefault(self.sig.degree(m), {})[m] = c
        return {d: Element._trusted(self.sig, t) for d, t in sorted(out.items())}

    def top(self) -> "Element":
        d = self.degree()
        return self if d is None else self.component(d)

    def is_scalar(self) -> bool:
        zero = Monomial(self.sig._zero_exps, 0)
        return all(m == zero for m in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.sig != self.sig:
                raise PreconditionError("signature mismatch between operands")
            return other
        if isinstance(other, (int, Fraction)):
            return self.sig.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element._trusted(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._trusted(self.sig, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: Scalar) -> "Element":
        c = Fraction(c)
        if not c:
            return self.sig.zero()
        return Element._trusted(self.sig, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.sig.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.sig.const(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self._terms.items())))
        return self._hash

    def truncate(self) -> "Element":
        if not self.sig.truncations:
            return self
        out: dict = {}
        for m, c in self._terms.items():
            r = _apply_truncations(self.sig, m[0], m[1])
            if r is None:
                continue
            s, mono = r
            v = out.get(mono, 0) + s * c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Element._trusted(self.sig, out)

    # -- transformations ------------------------------------------------------

    def map_coefficients(self, f: Callable[[Monomial, Fraction], Scalar]) -> "Element":
        return Element(self.sig, {m: f(m, c) for m, c in self._terms.items()})

    def substitute_even(self, name: str, rule: Callable[[int], Optional["Element"]]) -> "Element":
        return substitute_even(self, name, rule)

    def recast(self, sig: Signature) -> "Element":
        """Rename into another signature that has every generator used here."""
        emap = []
        for i, (n, _) in enumerate(self.sig.even):
            emap.append(sig.even_index.get(n))
        omap = [sig.odd_index.get(n) for n, _ in self.sig.odd]
        out: dict = {}
        for (exps, odd), c in self._terms.items():
            new = [0] * len(sig.even)
            for i, e in enumerate(exps):
                if e:
                    j = emap[i]
                    if j is None:
                        raise PreconditionError(f"generator {self.sig.even[i][0]} missing in target")
                    new[j] = e
            idx = []
            for b in _bits(odd):
                if omap[b] is None:
                    raise PreconditionError(f"generator {self.sig.odd[b][0]} missing in target")
                idx.append(omap[b])
            s, mask = sort_sign(idx)
            mono = Monomial(tuple(new), mask)
            out[mono] = out.get(mono, 0) + s * c
        return Element(sig, out).truncate()

    # -- serialization --------------------------------------------------------

    def sorted_terms(self) -> list:
        sig = self.sig
        return sorted(
            self._terms.items(),
            key=lambda mc: (-sig.degree(mc[0]), tuple(-e for e in mc[0][0]), mc[0][1]),
        )

    def to_text(self, rename: Mapping[str, str] | None = None) -> str:
        return format_element(self, rename)

    def to_json(self, rename: Mapping[str, str] | None = None) -> list:
        return element_to_json(self, rename)

    def __repr__(self):
        return f"Element({self.to_text()!r})"

    def __str__(self):
        return self.to_text()


def _apply_truncations(sig: Signature, exps: tuple, odd: int):
    sign = 1
    for rule in sig.truncations:
        r = rule.apply(sig, exps, odd)
        if r is None:
            return None
        s, exps, odd = r
        sign *= s
    return sign, Monomial(exps, odd)


def multiply(x: Element, y: Element) -> Element:
    """Graded-commutative product with Koszul signs and eager truncation."""
    if x.sig != y.sig:
        raise PreconditionError("signature mismatch between operands")
    sig = x.sig
    trunc = sig.truncations
    out: dict = {}
    get = out.get
    for (e1, o1), c1 in x._terms.items():
        for (e2, o2), c2 in y._terms.items():
            if o1 & o2:
                continue
            c = c1 * c2
            if o1 and o2 and reorder_sign(o1, o2) < 0:
                c = -c
            exps = tuple([a + b for a, b in zip(e1, e2)]) if e2 else e1
            if trunc:
                r = _apply_truncations(sig, exps, o1 | o2)
                if r is None:
                    continue
                s, mono = r
                if s < 0:
                    c = -c
            else:
                mono = Monomial(exps, o1 | o2)
            v = get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                del out[mono]
    return Element._trusted(sig, out)


def graded_component(x: Element, d: int) -> Element:
    return x.component(d)


def substitute_even(x: Element, name: str, rule: Callable[[int], Optional[Element]]) -> Element:
    """Replace ``c * name^k * m`` by ``c * rule(k) * m``.

    ``rule`` returns ``None`` for exponents it does not define; meeting such
    an exponent raises :class:`UndefinedSubstitution`.
    """
    sig = x.sig
    i = sig.even_index[name]
    cache: dict = {}
    result: dict = {}
    for (exps, odd), c in x._terms.items():
        k = exps[i]
        if k not in cache:
            cache[k] = rule(k)
        img = cache[k]
        if img is None:
            raise UndefinedSubstitution(name, k)
        rest = list(exps)
        rest[i] = 0
        term = Element._trusted(sig, {Monomial(tuple(rest), odd): c})
        for m, v in multiply(img, term)._terms.items():
            s = result.get(m, 0) + v
            if s:
                result[m] = s
            else:
                result.pop(m, None)
    return Element._trusted(sig, result)


class UndefinedSubstitution(ValueError):
    def __init__(self, name: str, exponent: int):
        super().__init__(f"no substitution rule for {name}^{exponent}")
        self.name = name
        self.exponent = exponent


# -- text form ------------------------------------------------------------------


def format_coefficient(c: Fraction) -> str:
    return str(c)


def _monomial_factors(sig: Signature, m: Monomial, rename) -> list:
    parts = []
    for (n, _), e in zip(sig.even, m[0]):
        if e:
            n = rename.get(n, n) if rename else n
            parts.append(n if e == 1 else f"{n}^{e}")
    for b in _bits(m[1]):
        n = sig.odd[b][0]
        parts.append(rename.get(n, n) if rename else n)
    return parts


def format_element(x: Element, rename: Mapping[str, str] | None = None) -> str:
    if x.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(x.sorted_terms()):
        factors = _monomial_factors(x.sig, m, rename)
        neg = c < 0
        mag = -c if neg else c
        if not factors:
            body = format_coefficient(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_coefficient(mag) + "*" + "*".join(factors)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class _Parser(ast.NodeVisitor):
    def __init__(self, sig: Signature, bindings: Mapping[str, Element]):
        self.sig = sig
        self.bindings = bindings

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"unsupported literal {node.value!r}")
        return Fraction(node.value)

    def visit_Name(self, node):
        if node.id in self.bindings:
            return self.bindings[node.id]
        try:
            return self.sig.gen(node.id)
        except KeyError:
            raise ValueError(f"unknown generator {node.id!r}") from None

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        right = self.visit(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            if isinstance(left, Fraction) and isinstance(right, Fraction):
                return left * right
            if isinstance(left, Fraction):
                return right * left
            return left * right
        if isinstance(op, ast.Div):
            if isinstance(right, Element):
                if not right.is_scalar() or right.is_zero():
                    raise ValueError("can only divide by a nonzero rational")
                right = right.constant_term()
            if right == 0:
                raise ValueError("division by zero")
            return left / right
        if isinstance(op, ast.Pow):
            if not isinstance(right, Fraction) or right.denominator != 1 or right < 0:
                raise ValueError("exponents must be non-negative integers")
            return left ** int(right)
        raise ValueError(f"unsupported operator {type(op).__name__}")

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {type(node).__name__}")


def parse_element(sig: Signature, text: str, bindings: Mapping[str, Element] | None = None) -> Element:
    """Parse the canonical text grammar (``+ - * / ^``, parentheses, rationals)."""
    src = text.replace("^", "**").strip()
    if not src:
        raise ValueError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    value = _Parser(sig, dict(bindings or {})).visit(tree)
    if isinstance(value, Fraction):
        return sig.const(value)
    return value


# -- JSON form ------------------------------------------------------------------


def element_to_json(x: Element, rename: Mapping[str, str] | None = None) -> list:
    sig = x.sig
    out = []
    for m, c in x.sorted_terms():
        even = {}
        for (n, _), e in zip(sig.even, m[0]):
            if e:
                even[rename.get(n, n) if rename else n] = e
        odd = [rename.get(sig.odd[b][0], sig.odd[b][0]) if rename else sig.odd[b][0] for b in _bits(m[1])]
        out.append({"coeff": format_coefficient(c), "even": even, "odd": odd})
    return out


def element_from_json(sig: Signature, data, rename: Mapping[str, str] | None = None) -> Element:
    inverse = {v: k for k, v in (rename or {}).items()}
    total = sig.zero()
    for term in data:
        c = Fraction(term["coeff"])
        even = {inverse.get(n, n): e for n, e in term.get("even", {}).items()}
        odd = [inverse.get(n, n) for n in term.get("odd", [])]
        total = total + sig.monomial(even, odd).scale(c)
    return total
