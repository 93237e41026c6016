"""Catalog of group families: cohomology and Tate rings, extension data.

Families in scope: cyclic p-groups, elementary abelian p-groups, dihedral
and generalized quaternion 2-groups, plus an auxiliary torus used by the
Cech-page validators.  For each cyclic (n >= 2) or quaternion group the
catalog also provides the central extension by its unique order-p
elementary abelian subgroup: the quotient's cohomology, the coefficient
rings pi_*(k^hCp) and pi_*(k^tCp), and the seed differentials d2(t1) and,
for quaternion groups, the Kudo transgression d3(t1^2).

Presentations (char 2 unless stated):

    H*(C_2)        = k[x1]
    H*(C_{p^n})    = k[x2] (x) Lambda(x1)          p^n >= 3, |x1|=1, |x2|=2
    H*((C_p)^n)    = k[x1..xn]                     p = 2
                   = k[x1..xn] (x) Lambda(y1..yn)  p odd, |xi|=2, |yi|=1
    H*(D_{2^nu})   = k[x1, u1, z2] / (x1^2 + u1 x1)
    H*(Q_8)        = k[x1, x2, e4] / (x1^2+x1x2+x2^2, x1^2x2+x1x2^2)
    H*(Q_{2^nu})   = k[x1, x2, e4] / (x1 x2, x1^3 + x2^3)   nu >= 4

Tate rings invert the periodicity class for the periodic families and
attach the dual ("alpha") part for p-rank >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GeneratorSpec, Monomial, RingPresentation, TateRing
from .gf import FieldDescriptor

CATALOG_VERSION = "1"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class GroupFamily:
    """One group from the supported families.

    kind/n: cyclic -> order p^n; elementary_abelian -> rank n;
    dihedral/quaternion -> order 2^n (n >= 3); torus -> rank n.
    """

    kind: str
    p: int
    n: int

    def __post_init__(self):
        if self.kind in ("cyclic", "elementary_abelian"):
            if self.n < 1:
                raise CatalogError(f"{self.kind} needs n >= 1")
        elif self.kind in ("dihedral", "quaternion"):
            if self.p != 2:
                raise CatalogError(f"{self.kind} groups are 2-groups")
            if self.n < 3:
                raise CatalogError(f"{self.kind} needs order >= 8")
        elif self.kind == "torus":
            if self.n < 1:
                raise CatalogError("torus needs rank >= 1")
        else:
            raise CatalogError(f"unknown family {self.kind!r}")

    @property
    def order(self) -> int:
        if self.kind in ("cyclic", "dihedral", "quaternion"):
            return self.p ** self.n
        if self.kind == "elementary_abelian":
            return self.p ** self.n
        raise CatalogError("torus has no finite order")

    def __str__(self):
        if self.kind == "cyclic":
            return f"C{self.p ** self.n}"
        if self.kind == "elementary_abelian":
            return f"C_{self.p}^{self.n}"
        if self.kind == "dihedral":
            return f"D{2 ** self.n}"
        if self.kind == "quaternion":
            return f"Q{2 ** self.n}"
        return f"T^{self.n}"


def cyclic(p: int, n: int) -> GroupFamily:
    return GroupFamily("cyclic", p, n)


def elementary_abelian(p: int, n: int) -> GroupFamily:
    return GroupFamily("elementary_abelian", p, n)


def dihedral(order: int) -> GroupFamily:
    nu = _log2(order, "dihedral")
    return GroupFamily("dihedral", 2, nu)


def quaternion(order: int) -> GroupFamily:
    nu = _log2(order, "quaternion")
    return GroupFamily("quaternion", 2, nu)


def torus(n: int, p: int = 2) -> GroupFamily:
    return GroupFamily("torus", p, n)


def _log2(order: int, kind: str) -> int:
    nu = order.bit_length() - 1
    if 2 ** nu != order:
        raise CatalogError(f"{kind} order {order} is not a power of 2")
    return nu


def _prime_power(q: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            if q != 1:
                raise CatalogError("order is not a prime power")
            return p, n
    raise CatalogError(f"cannot factor order {q}")


def parse_group(text: str) -> GroupFamily:
    """Parse CLI group names: "C8", "C_3^2", "Q8", "D8", "T^2"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise CatalogError("empty group name")
    head, body = s[0].upper(), s[1:]
    if head == "C":
        if "^" in body:
            ps, ns = body.lstrip("_").split("^", 1)
            return elementary_abelian(int(ps), int(ns))
        p, n = _prime_power(int(body.lstrip("_")))
        return cyclic(p, n)
    if head == "Q":
        return quaternion(int(body))
    if head == "D":
        return dihedral(int(body))
    if head == "T":
        return torus(int(body.lstrip("^")))
    raise CatalogError(f"cannot parse group {text!r}")


# -- cohomology presentations ------------------------------------------------

def _check_char(group: GroupFamily, field: FieldDescriptor):
    if group.kind == "torus":
        return
    if field.p != group.p:
        raise CatalogError(
            f"{group} needs characteristic {group.p}, got {field.p}")


def cohomology_ring(group: GroupFamily, field: FieldDescriptor) -> RingPresentation:
    """The group cohomology ring H*(G;k), s-graded."""
    _check_char(group, field)
    g = group
    if g.kind == "cyclic":
        if g.p == 2 and g.n == 1:
            return RingPresentation(f"H*({g})", field,
                                    [GeneratorSpec("x1", (1, 0))])
        return RingPresentation(
            f"H*({g})", field,
            [GeneratorSpec("x1", (1, 0), parity="odd"),
             GeneratorSpec("x2", (2, 0))])
    if g.kind == "elementary_abelian":
        if g.p == 2:
            names = ["x1", "y1"] if g.n == 2 else [f"x{i}" for i in range(1, g.n + 1)]
            return RingPresentation(
                f"H*({g})", field, [GeneratorSpec(nm, (1, 0)) for nm in names])
        gens = [GeneratorSpec(f"x{i}", (2, 0)) for i in range(1, g.n + 1)]
        gens += [GeneratorSpec(f"y{i}", (1, 0), parity="odd")
                 for i in range(1, g.n + 1)]
        return RingPresentation(f"H*({g})", field, gens)
    if g.kind == "dihedral":
        return RingPresentation(
            f"H*({g})", field,
            [GeneratorSpec("x1", (1, 0)), GeneratorSpec("u1", (1, 0)),
             GeneratorSpec("z2", (2, 0))],
            rules=[({"x1": 2}, {(("x1", 1), ("u1", 1)): 1})],
        )
    if g.kind == "quaternion":
        gens = [GeneratorSpec("x1", (1, 0)), GeneratorSpec("x2", (1, 0)),
                GeneratorSpec("e4", (4, 0))]
        if g.n == 3:
            # x1^2 + x1 x2 + x2^2 and x1^2 x2 + x1 x2^2; the second reduces
            # to x2^3 = 0 once the first is oriented
            rules = [
                ({"x1": 2}, {(("x1", 1), ("x2", 1)): 1, (("x2", 2),): 1}),
                ({"x2": 3}, {}),
            ]
        else:
            # x1 x2 and x1^3 + x2^3; completion adds x2^4 = 0
            rules = [
                ({"x1": 1, "x2": 1}, {}),
                ({"x1": 3}, {(("x2", 3),): 1}),
                ({"x2": 4}, {}),
            ]
        return RingPresentation(f"H*({g})", field, gens, rules=rules)
    if g.kind == "torus":
        d = 1 if field.p == 2 else 2
        return RingPresentation(
            f"H*(BT^{g.n})", field,
            [GeneratorSpec(f"x{i}", (d, 0)) for i in range(1, g.n + 1)])
    raise CatalogError(f"no cohomology presentation for {g}")


def tate_ring(group: GroupFamily, field: FieldDescriptor) -> TateRing:
    """Tate cohomology ring, periodic or with dual part by p-rank."""
    _check_char(group, field)
    g = group
    if g.kind == "cyclic" or (g.kind == "elementary_abelian" and g.n == 1):
        if g.p == 2 and g.n == 1:
            ring = RingPresentation(
                f"Tate({g})", field,
                [GeneratorSpec("e", (1, 0), invertible=True)])
            return TateRing(ring)
        ring = RingPresentation(
            f"Tate({g})", field,
            [GeneratorSpec("e1", (1, 0), parity="odd"),
             GeneratorSpec("e2", (2, 0), invertible=True)])
        return TateRing(ring)
    if g.kind == "quaternion":
        base = cohomology_ring(g, field)
        return TateRing(base.invert_generator("e4"))
    if g.kind in ("elementary_abelian", "dihedral"):
        base = cohomology_ring(g, field)
        names = [gen.name for gen in base.generators]
        ring = RingPresentation(
            f"Tate({g})", field, base.generators,
            rules=[(lead, repl) for lead, repl in base.rules],
            dualizable=names, dual_offset=(-1, 0))
        return TateRing(ring)
    if g.kind == "torus":
        base = cohomology_ring(g, field)
        names = [gen.name for gen in base.generators]
        offset = -1 if field.p == 2 else -(g.n + 1)
        ring = RingPresentation(
            f"Tate({g})", field, base.generators, dualizable=names,
            dual_offset=(offset, 0))
        return TateRing(ring)
    raise CatalogError(f"no Tate presentation for {g}")


# -- extension data ------------------------------------------------------------

@dataclass(frozen=True)
class SeedDifferential:
    """d_page on a coefficient class: source t1^source_exp, target in H*(Q)."""

    page: int
    source_exp: int
    target: tuple  # ((exps dict as tuple of (name, e), coeff int), ...)

    def target_terms(self):
        return [(dict(mono), c) for mono, c in self.target]


@dataclass(frozen=True)
class PeriodicityDatum:
    period: int
    unit: str  # name of the invertible periodicity class in tate_ring


@dataclass(frozen=True)
class ExtensionDatum:
    """The central extension C_p -> G -> Q with everything the pages need."""

    whole: GroupFamily
    sub_h: GroupFamily
    quotient: GroupFamily
    quotient_cohomology: RingPresentation
    quotient_tate: TateRing
    coefficient_fixed: RingPresentation   # pi_*(k^hCp), t-graded
    coefficient_tate: RingPresentation    # pi_*(k^tCp), t-graded Laurent
    seeds: tuple[SeedDifferential, ...]
    period: int
    extrapolated_quotient: bool = False

    @property
    def field(self) -> FieldDescriptor:
        return self.quotient_cohomology.ground


def _coefficient_rings(field: FieldDescriptor):
    if field.p == 2:
        fixed = RingPresentation("pi(k^hC2)", field,
                                 [GeneratorSpec("t1", (0, -1))])
        tate = RingPresentation("pi(k^tC2)", field,
                                [GeneratorSpec("t1", (0, -1), invertible=True)])
        return fixed, tate
    fixed = RingPresentation(
        f"pi(k^hC{field.p})", field,
        [GeneratorSpec("t2", (0, -2)), GeneratorSpec("t1", (0, -1), parity="odd")])
    tate = RingPresentation(
        f"pi(k^tC{field.p})", field,
        [GeneratorSpec("t2", (0, -2), invertible=True),
         GeneratorSpec("t1", (0, -1), parity="odd")])
    return fixed, tate


def _quotient_tate_for(quotient: GroupFamily, field: FieldDescriptor,
                       cohomology: RingPresentation) -> TateRing:
    if quotient.kind == "cyclic":
        unit = "x1" if (quotient.p == 2 and quotient.n == 1) else "x2"
        return TateRing(cohomology.invert_generator(unit))
    return tate_ring(quotient, field)


def extension_datum(group: GroupFamily, field: FieldDescriptor) -> ExtensionDatum:
    _check_char(group, field)
    g = group
    if g.kind == "cyclic":
        if g.n < 2:
            raise CatalogError(f"{g}: no proper elementary abelian subgroup")
        quotient = cyclic(g.p, g.n - 1)
        qc = cohomology_ring(quotient, field)
        if g.p == 2 and g.n == 2:
            # H^2(C_2) is spanned by x1^2; the transgression hits it
            seeds = [SeedDifferential(2, 1, (((("x1", 2),), 1),))]
        else:
            seeds = [SeedDifferential(2, 1, (((("x2", 1),), 1),))]
        extrapolated = False
    elif g.kind == "quaternion":
        if g.n == 3:
            quotient = elementary_abelian(2, 2)
            qc = cohomology_ring(quotient, field)
            seeds = [
                SeedDifferential(2, 1, (
                    ((("x1", 2),), 1),
                    ((("x1", 1), ("y1", 1)), 1),
                    ((("y1", 2),), 1),
                )),
                SeedDifferential(3, 2, (
                    ((("x1", 2), ("y1", 1)), 1),
                    ((("x1", 1), ("y1", 2)), 1),
                )),
            ]
            extrapolated = False
        else:
            quotient = dihedral(2 ** (g.n - 1))
            qc = cohomology_ring(quotient, field)
            seeds = [
                SeedDifferential(2, 1, (
                    ((("u1", 2),), 1),
                    ((("z2", 1),), 1),
                )),
                SeedDifferential(3, 2, (
                    ((("u1", 1), ("z2", 1)), 1),
                )),
            ]
            extrapolated = quotient.n == 3
    else:
        raise CatalogError(f"{g}: no extension datum (not cyclic n>=2 or quaternion)")

    fixed, tate_coeff = _coefficient_rings(field)
    datum = ExtensionDatum(
        whole=g,
        sub_h=cyclic(g.p, 1),
        quotient=quotient,
        quotient_cohomology=qc,
        quotient_tate=_quotient_tate_for(quotient, field, qc),
        coefficient_fixed=fixed,
        coefficient_tate=tate_coeff,
        seeds=tuple(seeds),
        period=periodicity(g).period,
        extrapolated_quotient=extrapolated,
    )
    _validate_seeds(datum)
    return datum


def _validate_seeds(datum: ExtensionDatum):
    """Seeds must shift bidegree by (r, r-1)."""
    for seed in datum.seeds:
        src = (0, -seed.source_exp)
        want = (src[0] + seed.page, src[1] + seed.page - 1)
        elem = datum.quotient_cohomology.element(
            [(exps, c) for exps, c in seed.target_terms()])
        if not elem:
            raise CatalogError(f"{datum.whole}: empty seed target")
        for mono in elem:
            if datum.quotient_cohomology.degree(mono) != want:
                raise CatalogError(
                    f"{datum.whole}: seed d{seed.page} lands in "
                    f"{datum.quotient_cohomology.degree(mono)}, expected {want}")


def periodicity(group: GroupFamily) -> PeriodicityDatum:
    """Tate periodicity of G and the invertible class realizing it."""
    g = group
    if g.kind == "cyclic" or (g.kind == "elementary_abelian" and g.n == 1):
        if g.p == 2 and g.n == 1:
            return PeriodicityDatum(1, "e")
        return PeriodicityDatum(2, "e2")
    if g.kind == "quaternion":
        return PeriodicityDatum(4, "e4")
    raise CatalogError(f"{g} has non-periodic Tate cohomology")


# -- Cech two-row pages ------------------------------------------------------------

def polynomial_dims(degrees, want: int) -> int:
    """Monomial count of k[x_1..x_n], |x_i| = degrees[i], in degree `want`."""
    if want < 0:
        return 0
    counts = [0] * (want + 1)
    counts[0] = 1
    for d in degrees:
        for v in range(d, want + 1):
            counts[v] += counts[v - d]
    return counts[want]


def cech_e2(rank: int, p: int, window=None, degrees=None, field=None,
            names=None):
    """Two-row Cech page for A = k[x_1..x_n]: row 0 the polynomial part,
    row n-1 the inverse-polynomial part generated by alpha."""
    from .specseq import Page, Window, entry_from_monomials

    if degrees is None:
        degrees = [1 if p == 2 else 2] * rank
    if len(degrees) != rank:
        raise CatalogError("one degree per polynomial generator")
    if names is None:
        names = [f"x{i}" for i in range(1, rank + 1)]
    if field is None:
        field = FieldDescriptor(p, 1)
    window = window or Window.default()
    gens = [GeneratorSpec(nm, (d, 0)) for nm, d in zip(names, degrees)]
    alpha_codegree = -(sum(degrees) - (rank - 1))
    ring = RingPresentation(f"Cech(rank {rank}, p={p})", field, gens,
                            dualizable=[g.name for g in gens],
                            dual_offset=(alpha_codegree, 0))
    entries = {}
    for x in range(window.t_min, window.t_max + 1):
        # row s = 0 at Adams degree x <= 0, holding A in codegree -x
        if x <= 0:
            monos = ring.basis((-x, 0))
            monos = [m for m in monos if not m.dual]
            if monos:
                entries[(0, x)] = entry_from_monomials(ring, monos)
        # row s = rank-1: inverse monomials; alpha sits at Adams -alpha_codegree
        if rank >= 1 and x >= -alpha_codegree:
            monos = [m for m in ring.basis((-x, 0)) if m.dual]
            if monos:
                entries[(rank - 1, x + (rank - 1))] = entry_from_monomials(ring, monos)
    return Page(r=2, variant="cech", window=window, algebra=ring,
                entries=entries, period=0)


def tensor_exterior(page, exterior_degrees):
    """Tensor a collapsed page with Lambda on generators of Adams degree -1.

    Module-level operation: dimensions convolve with the exterior Poincare
    coefficients; labels are decorated with the exterior factors.
    """
    from .specseq import Page, entry_from_monomials
    from itertools import combinations

    names = [f"y{i}" for i in range(1, len(exterior_degrees) + 1)] \
        if not isinstance(exterior_degrees, dict) else list(exterior_degrees)
    shifts = list(exterior_degrees.values()) if isinstance(exterior_degrees, dict) \
        else list(exterior_degrees)
    ring = page.algebra
    ext_gens = [GeneratorSpec(nm, (0, -d), parity="odd")
                for nm, d in zip(names, shifts)]
    big = RingPresentation(
        f"{ring.name} (x) Lambda({','.join(names) or '-'})", ring.ground,
        list(ring.generators) + ext_gens,
        dualizable=[ring.generators[i].name for i in ring.dualizable],
        dual_offset=ring.dual_offset, check=False)
    pad = (0,) * len(ext_gens)
    entries = {}
    for subset_size in range(len(ext_gens) + 1):
        for subset in combinations(range(len(ext_gens)), subset_size):
            shift = sum(shifts[i] for i in subset)
            for (s, t), entry in page.entries.items():
                pos = (s, t - shift)
                if not (page.window.s_min <= pos[0] <= page.window.s_max
                        and page.window.t_min <= pos[1] <= page.window.t_max):
                    continue
                monos = entries.setdefault(pos, [])
                for m in entry.monomials:
                    ext = tuple(1 if i in subset else 0
                                for i in range(len(ext_gens)))
                    monos.append(Monomial(m.exponents + ext, m.dual))
    out = {}
    for pos, monos in sorted(entries.items()):
        positives = [m for m in monos if not m.dual]
        duals = [m for m in monos if m.dual]
        ordered = big.sorted_monomials(positives) + big.sorted_monomials(duals)
        out[pos] = entry_from_monomials(big, ordered)
    return Page(r=page.r, variant=page.variant, window=page.window,
                algebra=big, entries=out, period=page.period)


def total_dims(page) -> dict[int, int]:
    """Dimension per Adams degree x = t - s, summed over filtration."""
    out: dict[int, int] = {}
    for (s, t), entry in page.entries.items():
        if entry.dim:
            x = t - s
            out[x] = out.get(x, 0) + entry.dim
    return out


def tate_total_dims(group: GroupFamily, field: FieldDescriptor,
                    degree_range) -> dict[int, int]:
    """dim of Tate cohomology in each degree d (the chart puts it at x = -d)."""
    ring = tate_ring(group, field)
    return {d: len(ring.basis(d)) for d in degree_range}


def cohomology_dims(group: GroupFamily, field: FieldDescriptor,
                    degree_range) -> dict[int, int]:
    ring = cohomology_ring(group, field)
    return {d: len(ring.basis((d, 0))) for d in degree_range}


def cohen_macaulay_data(group: GroupFamily):
    """Declared polynomial subalgebra generators (names) per family."""
    g = group
    if g.kind == "cyclic":
        return ["x1"] if (g.p == 2 and g.n == 1) else ["x2"]
    if g.kind == "elementary_abelian":
        return [f"x{i}" for i in range(1, g.n + 1)] if not (g.p == 2 and g.n == 2) \
            else ["x1", "y1"]
    if g.kind == "dihedral":
        return ["u1", "z2"]
    if g.kind == "quaternion":
        return ["e4"]
    raise CatalogError(f"no Cohen-Macaulay data for {g}")
