"""Randomized property suites, runnable standalone or via `picss reproduce`.

Each suite runs a requested number of seeded-random cases and returns the
list of failure descriptions (empty = all good).  The suites check the
load-bearing invariants: field axioms, confluence of the rewrite systems
under randomized reduction order, d∘d = 0 on computed differentials, the
Leibniz rule on random products, and nonsingularity of the cup-product
pairing between complementary degrees of the rank >= 2 Tate rings.
"""

from __future__ import annotations

import random

from .algebra import element_add
from .gf import FieldDescriptor, field_ops
from .groups import (cyclic, dihedral, elementary_abelian, extension_datum,
                     quaternion, tate_ring)
from .specseq import derive, run_spectral_sequence, translate_seeds

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6),
                (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)]

RING_BUILDERS = [
    lambda f: tate_ring(elementary_abelian(f.p, 2), f),
    lambda f: tate_ring(elementary_abelian(f.p, 3), f),
    lambda f: tate_ring(dihedral(8), f),
    lambda f: tate_ring(dihedral(16), f),
]


def _random_field(rng, max_order=64) -> FieldDescriptor:
    p, m = rng.choice([pm for pm in SMALL_FIELDS if pm[0] ** pm[1] <= max_order])
    return FieldDescriptor(p, m)


def suite_field_axioms(cases=1000, seed=0) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for i in range(cases):
        f = _random_field(rng)
        a, b, c = (f.from_int(rng.randrange(f.order)) for _ in range(3))
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
            failures.append(f"associativity broken in {f} case {i}")
        if a * (b + c) != a * b + a * c:
            failures.append(f"distributivity broken in {f} case {i}")
        if not a.is_zero() and a * a.inv() != f.one():
            failures.append(f"inverse broken in {f} case {i}")
        if (a + b).frobenius(1) != a.frobenius(1) + b.frobenius(1):
            failures.append(f"frobenius not additive in {f} case {i}")
        if (a * b).frobenius(1) != a.frobenius(1) * b.frobenius(1):
            failures.append(f"frobenius not multiplicative in {f} case {i}")
        if a.frobenius(f.m) != a:
            failures.append(f"frobenius^m not identity in {f} case {i}")
    return failures


def _shuffled_normal_form(ring, element, rng):
    """Normal form with a randomized choice of reducible term and rule."""
    work = {m: c for m, c in element.items() if not c.is_zero()}
    while True:
        reducible = []
        for m in work:
            if m.dual:
                continue
            for k, rule in enumerate(ring.rules):
                if ring._divides(rule[0], m):
                    reducible.append((m, k))
        if not reducible:
            return work
        m, k = rng.choice(reducible)
        c = work.pop(m)
        work = element_add(work, ring._rewrite_term(m, c, ring.rules[k]))


def _random_tate_element(ring, rng, max_terms=3, max_degree=8):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        d = rng.randrange(0, max_degree + 1)
        monos = [m for m in ring.basis((d, 0)) if not m.dual]
        if not monos:
            continue
        m = rng.choice(monos)
        c = ring.ground.from_int(rng.randrange(1, ring.ground.order))
        terms = element_add(terms, {m: c})
    return terms


def suite_rewrite_confluence(cases=1000, seed=1) -> list[str]:
    rng = random.Random(seed)
    failures = []
    rings = []
    for p, m in ((2, 1), (2, 2), (3, 1)):
        f = FieldDescriptor(p, m)
        rings.append(tate_ring(elementary_abelian(p, 2), f).positive)
        if p == 2:
            rings.append(tate_ring(quaternion(8), f).positive)
            rings.append(tate_ring(quaternion(16), f).positive)
            rings.append(tate_ring(dihedral(8), f).positive)
        rings.append(tate_ring(cyclic(p, 2), f).positive)
    for i in range(cases):
        ring = rng.choice(rings)
        elem = _random_tate_element(ring, rng)
        reference = ring.normal_form(elem)
        again = _shuffled_normal_form(ring, elem, rng)
        if reference != again:
            failures.append(f"confluence broken in {ring.name} case {i}")
    return failures


def _standard_runs():
    runs = []
    for g, f in ((cyclic(2, 2), FieldDescriptor(2, 1)),
                 (cyclic(2, 3), FieldDescriptor(2, 2)),
                 (cyclic(3, 2), FieldDescriptor(3, 1)),
                 (quaternion(8), FieldDescriptor(2, 1)),
                 (quaternion(16), FieldDescriptor(2, 1))):
        datum = extension_datum(g, f)
        for variant in ("hfpss", "tate"):
            runs.append((datum, run_spectral_sequence(datum, variant)))
    return runs


def suite_d_squared(cases=1000, seed=2, runs=None) -> list[str]:
    rng = random.Random(seed)
    failures = []
    runs = runs if runs is not None else _standard_runs()
    flat = []
    for datum, result in runs:
        for r, diff in result.diffs.items():
            for pos, block in diff.blocks.items():
                flat.append((result, r, pos, block))
    if not flat:
        return ["no differentials to check"]
    for i in range(cases):
        result, r, (s, t), first = rng.choice(flat)
        second = result.diffs[r].blocks.get((s + r, t + r - 1))
        if not first or not second:
            continue
        ops = field_ops(result.final_page.algebra.ground)
        cols = len(first[0]) if first else 0
        for j in range(cols):
            col = [first[i2][j] for i2 in range(len(first))]
            image = [0] * len(second)
            for k, c in enumerate(col):
                if c:
                    for i2 in range(len(second)):
                        image[i2] = ops.add[image[i2]][ops.mul[second[i2][k]][c]]
            if any(image):
                failures.append(f"d∘d != 0 at {(s, t)} page {r} case {i}")
                break
    return failures


def suite_leibniz(cases=1000, seed=3, runs=None) -> list[str]:
    """d(ab) = d(a) b + (-1)^|a| a d(b) on random E2 monomial pairs."""
    rng = random.Random(seed)
    failures = []
    data = []
    for g, f in ((cyclic(2, 3), FieldDescriptor(2, 1)),
                 (cyclic(3, 2), FieldDescriptor(3, 1)),
                 (quaternion(8), FieldDescriptor(2, 2)),
                 (quaternion(16), FieldDescriptor(2, 1))):
        datum = extension_datum(g, f)
        from .specseq import build_e2
        page = build_e2(datum, "tate")
        seeds = translate_seeds(datum, page.algebra)
        data.append((page, seeds))
    for i in range(cases):
        page, seeds = rng.choice(data)
        algebra = page.algebra
        positions = [pos for pos, e in page.entries.items() if e.dim]
        (s1, t1) = rng.choice(positions)
        (s2, t2) = rng.choice(positions)
        e1 = page.entries[(s1, t1)]
        e2 = page.entries[(s2, t2)]
        m1 = rng.choice(e1.monomials)
        m2 = rng.choice(e2.monomials)
        one = algebra.ground.one()
        a = {m1: one}
        b = {m2: one}
        ab = algebra.multiply(a, b)
        r = rng.choice(sorted(seeds))
        src_exp, target = seeds[r]
        t1_idx = algebra.index["t1"]
        d_ab = derive(algebra, ab, src_exp, target, t1_idx)
        da_b = algebra.multiply(derive(algebra, a, src_exp, target, t1_idx), b)
        a_db = algebra.multiply(a, derive(algebra, b, src_exp, target, t1_idx))
        if algebra.total_degree(m1) % 2:
            a_db = {m: -c for m, c in a_db.items()}
        rhs = element_add(da_b, a_db)
        if d_ab != rhs:
            failures.append(
                f"Leibniz broken for {algebra.monomial_str(m1)} * "
                f"{algebra.monomial_str(m2)} at page {r} case {i}")
    return failures


def suite_pairing(cases=1000, seed=4) -> list[str]:
    rng = random.Random(seed)
    failures = []
    rings = []
    for p, m in ((2, 1), (2, 2), (3, 1), (5, 1)):
        f = FieldDescriptor(p, m)
        for build in RING_BUILDERS:
            try:
                rings.append(build(f))
            except Exception:
                pass
    rings = [t for t in rings if t.has_dual]
    for i in range(cases):
        tate = rng.choice(rings)
        r = rng.randrange(0, 9)
        matrix = tate.pairing_matrix(r)
        n = len(tate.basis(r))
        if len(matrix) != n:
            failures.append(f"pairing not square for {tate.positive.name} r={r}")
            continue
        ops = field_ops(tate.ground)
        enc = [[ops.encode(c) for c in row] for row in matrix]
        from .specseq import _rref
        _, pivots = _rref(enc, ops)
        if len(pivots) != n:
            failures.append(
                f"pairing singular for {tate.positive.name} r={r} case {i}")
    return failures


ALL_SUITES = {
    "field_axioms": suite_field_axioms,
    "rewrite_confluence": suite_rewrite_confluence,
    "d_squared": suite_d_squared,
    "leibniz": suite_leibniz,
    "pairing": suite_pairing,
}


def run_property_suites(cases=1000, runs=None) -> dict[str, list[str]]:
    out = {}
    for name, suite in ALL_SUITES.items():
        if name in ("d_squared",) and runs is not None:
            out[name] = suite(cases, runs=runs)
        else:
            out[name] = suite(cases)
    return out
