"""Verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from math import comb

from .algebra import Element, Monomial, Signature
from .errors import PreconditionError
from .gw import gw_direct, gw_via_qhn, legal_queries, verify_lemma9
from .jacobian import grr_extension_chern_character, omega, pushforward_sigma, universal_c1
from .qh import Report, prop19_exclusion_check, prop19_identity_check, quantum_ring
from .quotient import (
    QuotientPresentation,
    classical_presentation,
    hilbert_series_complete_intersection,
    poincare_polynomial_invariant,
    primitive_dimension,
    primitive_dimension_direct,
    sp_decomposition,
)
from .relations import ABG, classical_relations, floer_relations, quantum_relations, relation_degrees

SUITES = ("relations", "quotient", "grr", "lemma9", "gw", "prop19", "qring", "kernel", "all")


def golden_quantum_triples() -> dict:
    """The explicitly known quantum relation triples for genus 1, 2, 3."""
    a, b, c = ABG.gens()
    return {
        1: (a, b + 8, c),
        2: (a * a + b - 8, (b + 8) * a + c, a * c),
        3: (
            a * (a * a + b + 8) + (a * b - a.scale(8) + c).scale(4),
            (b + 8) * (a * a + b + 8) + (a * c).scale(Fraction(4, 3)),
            c * (a * a + b + 8),
        ),
    }


def relations_suite(max_genus: int = 8) -> Report:
    rep = Report("relations")
    for g, triple in golden_quantum_triples().items():
        got = quantum_relations(g).relations
        rep.add(f"quantum relations genus {g} match the known triple", got == triple)
    a, b, c = ABG.gens()
    rep.add("classical genus 1 = (a, b, g)", classical_relations(1).relations == (a, b, c))
    rep.add("floer genus 1 = (a, b - 8, g)", floer_relations(1).relations == (a, b - 8, c))
    for g in range(1, max_genus + 1):
        q = classical_relations(g).relations
        R = floer_relations(g).relations
        Q = quantum_relations(g).relations
        degs = relation_degrees(g)
        lead = all(r.component(d) == qi and r.degree() == d for r, qi, d in zip(R, q, degs))
        rep.add(f"genus {g}: leading terms of R are q", lead)
        hom = all(qi.is_homogeneous() and qi.degree() == d for qi, d in zip(q, degs))
        rep.add(f"genus {g}: q homogeneous of degrees {degs}", hom)
        alpha_g = Monomial((g, 0, 0), 0)
        rep.add(
            f"genus {g}: a^{g} absent from R^3 and Q^3",
            R[2].coefficient(alpha_g) == 0 and Q[2].coefficient(alpha_g) == 0,
        )
        mod4 = all((d - e) % 4 == 0 for r, d in zip(R + Q, degs + degs) for e in r.degrees())
        rep.add(f"genus {g}: components graded mod 4", mod4)
    return rep


def quotient_suite(max_genus: int = 8) -> Report:
    rep = Report("quotient")
    for g in range(1, max_genus + 1):
        p = classical_presentation(g)
        rep.add(f"genus {g}: dimension C(g+2,3)", p.dimension == comb(g + 2, 3), str(p.dimension))
        rep.add(
            f"genus {g}: graded dimensions match the complete-intersection series",
            poincare_polynomial_invariant(g) == hilbert_series_complete_intersection(g),
        )
        bad = p.annihilation_failures(6 * g)
        rep.add(f"genus {g}: normal form kills m * q^i up to degree {6 * g}", not bad, str(bad[:3]))
    rep.add("Sp decomposition genus 2 total = 8", sp_decomposition(2).total == 8)
    rep.add("Sp decomposition genus 3 total = 48", sp_decomposition(3).total == 48)
    for g in (2, 3, 4):
        direct = [primitive_dimension_direct(g, k) for k in range(g + 1)]
        formula = [primitive_dimension(g, k) for k in range(g + 1)]
        rep.add(f"genus {g}: primitive dimensions, formula vs kernel rank", direct == formula, str(direct))
    return rep


def grr_suite(genera=range(2, 9)) -> Report:
    rep = Report("grr")
    for g in genera:
        ch = grr_extension_chern_character(g)
        w = omega(g)
        rep.add(f"genus {g}: ch(E) = g + 4 omega", ch == w.scale(4) + g)
        rep.add(f"genus {g}: doubled = 2g + 8 omega", ch.scale(2) == w.scale(8) + 2 * g)
        c1 = universal_c1(g)
        sig = c1.sig
        target = (sig.gen("Sigma") * omega(g).recast(sig)).scale(-2)
        rep.add(f"genus {g}: c_1(L)^2 = -2 Sigma omega", c1 * c1 == target)
        rep.add(f"genus {g}: p_*(c_1(L)^2) = -2 omega", pushforward_sigma(c1 * c1, g) == w.scale(-2))
    return rep


def lemma9_suite(genera=(3, 4, 5, 6)) -> Report:
    rep = Report("lemma9")
    for g in genera:
        r = verify_lemma9(g)
        rep.add(f"genus {g}: {r.checked} top-component identities", r.passed, str(r.failures[:2]))
    return rep


def gw_suite(genera=(3, 4)) -> Report:
    rep = Report("gw")
    from .gw import GWQuery

    for g in genera:
        bad = []
        n = 0
        for q in legal_queries(g):
            n += 1
            d, v = gw_direct(q), gw_via_qhn(q)
            if d != v:
                bad.append((q, d, v))
        rep.add(f"genus {g}: direct = quantum-N on {n} queries", not bad, str(bad[:2]))
    if 3 in genera:
        rep.add("genus 3: Psi(a^8) = 5632", gw_direct(GWQuery(3, 8, 0, ())) == 5632)
    return rep


def qring_suite(genera=(1, 2, 3)) -> Report:
    rep = Report("qring")
    for g in genera:
        ring = quantum_ring(g)
        B = ring.basis()
        prod = {}
        for i, x in enumerate(B):
            for j, y in enumerate(B):
                prod[i, j] = ring.product(x, y)
        comm = all(prod[i, j] == prod[j, i] for i in range(len(B)) for j in range(len(B)))
        rep.add(f"genus {g}: commutative on basis pairs", comm)
        assoc = True
        for i, j, k in iproduct(range(len(B)), repeat=3):
            if ring.product(prod[i, j], B[k]) != ring.product(B[i], prod[j, k]):
                assoc = False
                break
        rep.add(f"genus {g}: associative on basis triples", assoc)
        classical = classical_presentation(g)
        graded = True
        mod4 = True
        for i, x in enumerate(B):
            for j, y in enumerate(B):
                d = x.degree() + y.degree()
                p = prod[i, j]
                if any((d - e) % 4 for e in p.degrees()):
                    mod4 = False
                if d <= 6 * g - 6 and p.component(d) != classical.normal_form(x * y):
                    graded = False
        rep.add(f"genus {g}: degrees respected mod 4", mod4)
        rep.add(f"genus {g}: top components are classical products", graded)
        rep.add(f"genus {g}: dimension C(g+2,3)", ring.dimension == comb(g + 2, 3))
        rep.add(f"genus {g}: relations kill the basis", not ring.presentation.annihilation_failures())
    return rep


def _random_element(rng: random.Random, sig: Signature, homogeneous_degree=None) -> Element:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        exps = tuple(rng.randint(0, 2) for _ in sig.even)
        odd = rng.getrandbits(len(sig.odd)) if sig.odd else 0
        terms[Monomial(exps, odd)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return Element(sig, terms).truncate()


def kernel_suite(cases: int = 300, seed: int = 20240601) -> Report:
    from .jacobian import jacobian_signature, surface_jacobian_signature

    rep = Report("kernel")
    rng = random.Random(seed)
    sigs = [
        Signature(even=(("a", 2), ("b", 4)), odd=(("x", 1), ("y", 3), ("z", 1))),
        jacobian_signature(2),
        surface_jacobian_signature(2),
    ]
    assoc = comm = dist = rt = True
    for n in range(cases):
        sig = sigs[n % len(sigs)]
        x, y, z = (_random_element(rng, sig) for _ in range(3))
        assoc &= (x * y) * z == x * (y * z)
        dist &= x * (y + z) == x * y + x * z
        for d1, xs in x.components().items():
            for d2, ys in y.components().items():
                sign = -1 if (d1 * d2) % 2 else 1
                comm &= xs * ys == (ys * xs).scale(sign)
        rt &= sig.parse(x.to_text()) == x and sig.from_json(x.to_json()) == x
    rep.add(f"associativity on {cases} random triples", assoc)
    rep.add(f"distributivity on {cases} random triples", dist)
    rep.add("graded commutativity", comm)
    rep.add("text and JSON round trips", rt)
    return rep


def stated_gamma_square_check() -> Report:
    """The four quotient facts for genus 3 exactly as they are usually stated.

    ``gh^2*(bh - 8)`` does not vanish in the genus-3 ring (it equals
    ``-16*gh^2``); it vanishes only once ``gh^4 = 0`` is imposed on the
    hypothetical deformation, so this check is expected to fail.
    """
    rep = Report("prop19-quotient")
    ring = quantum_ring(3)
    gh = ring.parse("gh")
    bh8 = ring.parse("bh - 8")
    facts = [
        ("gh^3 = 0", ring.product(gh, gh, gh), True),
        ("gh^4 = 0", ring.product(gh, gh, gh, gh), True),
        ("gh^2*(bh - 8) = 0", ring.product(gh, gh, bh8), True),
        ("gh*(bh - 8) != 0", ring.product(gh, bh8), False),
    ]
    for label, value, should_vanish in facts:
        rep.add(f"genus 3 quotient: {label}", value.is_zero() == should_vanish, ring_text(value))
    return rep


def ring_text(x: Element) -> str:
    from .qh import hat_text

    return hat_text(x)


def kernel_full_suite(cases: int = 1000, seed: int = 20240601) -> Report:
    """Kernel laws plus hat involution and normal-form idempotence."""
    from .relations import hat_transform

    rep = kernel_suite(cases, seed)
    rng = random.Random(seed + 1)
    inv = idem = True
    # random elements reach degree 24
    pres = [QuotientPresentation(h, max_degree=24) for h in (1, 2, 3, 4)]
    for n in range(cases):
        g = 1 + n % 6
        x = _random_element(rng, ABG)
        base = rng.choice(relation_degrees(g))
        inv &= hat_transform(g, hat_transform(g, x, base), base) == x
        p = pres[n % 4]
        nf = p.normal_form(x)
        idem &= p.normal_form(nf) == nf
    rep.add(f"hat transform is an involution on {cases} elements", inv)
    rep.add(f"normal form is idempotent on {cases} elements", idem)
    return rep


def run_suite(name: str, genus: int = 3) -> list:
    """Run one suite at ``genus``; ``all`` runs every acceptance range."""
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name == "all":
        return [
            relations_suite(8),
            quotient_suite(8),
            grr_suite(range(2, 9)),
            lemma9_suite((3, 4, 5, 6)),
            gw_suite((3, 4)),
            _merge("prop19", prop19_identity_check(), stated_gamma_square_check(), prop19_exclusion_check()),
            qring_suite((1, 2, 3)),
            kernel_full_suite(),
        ]
    g = genus
    runners = {
        "relations": lambda: relations_suite(max(g, 3)),
        "quotient": lambda: quotient_suite(g),
        "grr": lambda: grr_suite([g]),
        "lemma9": lambda: lemma9_suite([g]),
        "gw": lambda: gw_suite([g]),
        "prop19": lambda: _merge(
            "prop19", prop19_identity_check(), stated_gamma_square_check(), prop19_exclusion_check()
        ),
        "qring": lambda: qring_suite([g]),
        "kernel": lambda: kernel_full_suite(),
    }
    lows = {"grr": 2, "lemma9": 2, "gw": 3, "qring": 1, "quotient": 1, "relations": 1}
    if g < lows.get(name, 0):
        raise PreconditionError(f"suite {name} needs genus >= {lows[name]}, got {g}")
    if name == "qring" and g > 3:
        quantum_ring(g)  # raises unless proven
    return [runners[name]()]


def _merge(name: str, *reports: Report) -> Report:
    out = Report(name)
    for r in reports:
        out.checks += r.checks
        out.trace += r.trace
    return out
