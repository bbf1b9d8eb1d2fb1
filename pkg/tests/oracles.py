"""Reference computations that share no code with the package kernel.

``brute_line_invariant`` expands the line-invariant formula by hand: binomial
expansion of ``(4w + X)^a``, the ``X`` substitution, ``w^n`` as a sum over
``n``-subsets of symplectic pairs, and an explicit permutation sign against
the volume word ``phi1 phi(1+g) phi2 phi(2+g) ...``.

``sympy_normal_form`` reduces a polynomial in ``a, b, g`` modulo an ideal
with a Groebner basis.
"""

from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import sympy


def perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct keys), by inversion count."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def volume_position(g):
    # phi_j sits at position 2(j-1), phi_{j+g} at 2(j-1)+1
    pos = {}
    for j in range(1, g + 1):
        pos[j] = 2 * (j - 1)
        pos[j + g] = 2 * (j - 1) + 1
    return pos


def omega_power_wedge_psi(g, n, psi):
    """``<w^n phi_{psi...}, [J]>`` by summing over pair subsets."""
    if 2 * n + len(psi) != 2 * g:
        return 0
    if len(set(psi)) != len(psi):
        return 0
    pos = volume_position(g)
    total = 0
    for S in combinations(range(1, g + 1), n):
        word = []
        for j in S:
            word += [j, j + g]
        word += list(psi)
        if len(set(word)) != 2 * g:
            continue
        total += perm_sign([pos[w] for w in word])
    # w^n = n! * sum over subsets of ordered pair products
    return factorial(n) * total


def brute_line_invariant(g, a, b, psi):
    r = len(psi)
    total = Fraction(0)
    for k in range(a + 1):
        # C(a,k) (4w)^(a-k) X^k, times X^(2b + r)
        xe = k + 2 * b + r
        i = xe - (2 * g - 1)
        n = a - k
        if i < 0:
            # degree balance forces the exterior part above the top degree
            assert 2 * n + r > 2 * g, "low X power with nonzero exterior part"
            continue
        coeff = Fraction(comb(a, k) * 4 ** n) * Fraction((-8) ** i, factorial(i))
        total += coeff * omega_power_wedge_psi(g, n + i, psi)
    return total


# -- Groebner oracle ----------------------------------------------------------

A, B, G = sympy.symbols("a b g")
GENS = (A, B, G)


def to_sympy(x):
    """Convert a package ``Element`` in ``a, b, g`` to a sympy expression."""
    expr = 0
    names = [n for n, _ in x.sig.even]
    sym = {"a": A, "b": B, "g": G}
    for m, c in x.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for n, e in zip(names, m.exps):
            term *= sym[n] ** e
        expr += term
    return sympy.expand(expr)


def groebner(relations):
    return sympy.groebner([to_sympy(r) for r in relations], *GENS, order="grevlex")


def in_ideal(expr, gb):
    _, rem = gb.reduce(sympy.expand(expr))
    return sympy.expand(rem) == 0


def quotient_dimension(gb):
    """Count standard monomials of a zero-dimensional ideal."""
    leads = [sympy.Poly(p, *GENS).monoms(order="grevlex")[0] for p in gb.exprs]
    count = 0
    bound = 1 + max(max(l) for l in leads)
    for i in range(bound):
        for j in range(bound):
            for k in range(bound):
                if not any(i >= l[0] and j >= l[1] and k >= l[2] for l in leads):
                    count += 1
    return count
