"""Picard spectral sequence: unstable differentials and group assembly.

The page has three kinds of rows.  Row t = 0 carries the Picard group of
the stable module category of the fiber C_p (trivial for p = 2, C_2 for
odd p, by Dade); row t = 1 carries group cohomology of the quotient with
k^x coefficients (all torsion prime to p, so trivial above s = 0 for a
finite field); rows t >= 2 copy the multiplicative spectral sequence of
the Tate endomorphism ring, shifted by one.

Differentials in the range t - s > 0 or t >= r + 1 are imported verbatim
from that run.  On the diagonal the page-r differential out of (r, r)
acquires the extra squaring term: x maps to d_r(x) + x^2, a map that is
additive (F_p-linear) but Frobenius-semilinear rather than k-linear in
characteristic 2.  Kernels and cokernels are therefore computed by exact
linear algebra over F_p.  The surviving zero line is reassembled into one
abelian group using the single extension constraint available: the unit's
suspension class has order equal to the Tate periodicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from math import gcd, prod

from .gf import FieldDescriptor, FieldElement
from .groups import (CatalogError, GroupFamily, cyclic, extension_datum,
                     periodicity)
from .specseq import (Page, RunResult, SpectralSequenceError, Window,
                      run_spectral_sequence)


class PicardError(RuntimeError):
    pass


class AmbiguousExtensionError(PicardError):
    """More than one abelian group fits the filtration and unit order."""


# -- finite abelian groups ----------------------------------------------------

def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form, d1 | d2 | ... ."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise PicardError(f"not a divisibility chain: {self.invariant_factors}")
        if any(d < 2 for d in self.invariant_factors):
            raise PicardError("invariant factors must be >= 2")

    @classmethod
    def from_orders(cls, orders) -> "AbelianGroup":
        primary: dict[int, list[int]] = {}
        for n in orders:
            for p, e in _factorint(n).items():
                primary.setdefault(p, []).append(e)
        width = max((len(v) for v in primary.values()), default=0)
        factors = []
        for i in range(width):
            d = 1
            for p, exps in primary.items():
                exps_sorted = sorted(exps, reverse=True)
                if i < len(exps_sorted):
                    d *= p ** exps_sorted[i]
            factors.append(d)
        return cls(tuple(sorted(factors)))

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(())

    @classmethod
    def cyclic_of(cls, n: int) -> "AbelianGroup":
        return cls((n,)) if n > 1 else cls(())

    @classmethod
    def elementary(cls, p: int, rank: int) -> "AbelianGroup":
        return cls((p,) * rank)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors) if self.invariant_factors else 1

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def has_element_of_order(self, n: int) -> bool:
        return n >= 1 and self.exponent % n == 0

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        merged = AbelianGroup.from_orders(
            list(self.invariant_factors) + list(other.invariant_factors))
        return AbelianGroup(merged.invariant_factors,
                            self.free_rank + other.free_rank)

    def __str__(self):
        parts = ["Z"] * self.free_rank
        parts += [f"C{d}" for d in reversed(self.invariant_factors)]
        return " x ".join(parts) if parts else "1"


def _candidate_groups(order: int):
    """All abelian groups of a given order, via partitions per prime."""
    def partitions(n):
        if n == 0:
            yield ()
            return
        for first in range(n, 0, -1):
            for rest in partitions(n - first):
                if not rest or first >= rest[0]:
                    yield (first,) + rest

    factored = _factorint(order)
    per_prime = []
    for p, e in sorted(factored.items()):
        per_prime.append([(p, part) for part in partitions(e)])
    for combo in product(*per_prime):
        orders = []
        for p, part in combo:
            orders.extend(p ** e for e in part)
        yield AbelianGroup.from_orders(orders)


# explicit element machinery for the filtration check -------------------------

def _span(gens, factors) -> frozenset:
    zero = (0,) * len(factors)
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % d for a, b, d in zip(x, g, factors))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def _subgroups_of(carrier: frozenset, factors):
    elements = sorted(carrier)
    rank = len(factors)
    seen = set()
    out = []
    for size in range(rank + 1):
        for gens in combinations(elements, size):
            sub = _span(gens, factors)
            if sub <= carrier and sub not in seen:
                seen.add(sub)
                out.append(sub)
    return out


def _matches_type(counts: dict[int, int], group: AbelianGroup) -> bool:
    """counts[d] = number of elements killed by d, for each divisor d."""
    for d, n in counts.items():
        expect = prod(gcd(d, f) for f in group.invariant_factors) \
            if group.invariant_factors else 1
        if n != expect:
            return False
    return True


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


def _quotient_matches(carrier, subgroup, factors, expected: AbelianGroup) -> bool:
    q_order = len(carrier) // len(subgroup)
    if expected.order != q_order:
        return False
    counts = {}
    for d in _divisors(q_order):
        killed = sum(1 for x in carrier
                     if tuple((d * a) % f for a, f in zip(x, factors)) in subgroup)
        counts[d] = killed // len(subgroup)
    return _matches_type(counts, expected)


def _admits_filtration(carrier, factors, quotients) -> bool:
    """Is there a chain G > F^1 > ... with the listed successive quotients?

    quotients are ordered by increasing filtration: the first is a quotient
    of the whole group, the last sits at the bottom of the chain.
    """
    if not quotients:
        return len(carrier) == 1
    head, rest = quotients[0], quotients[1:]
    if len(carrier) % head.order:
        return False
    for sub in _subgroups_of(carrier, factors):
        if len(sub) * head.order != len(carrier):
            continue
        if _quotient_matches(carrier, sub, factors, head):
            if _admits_filtration(sub, factors, rest):
                return True
    return False


def assemble_zero_line(quotients, unit_order: int) -> AbelianGroup:
    """The unique abelian group with the given filtration quotients and an
    element of order unit_order; raises if there is not exactly one."""
    quotients = [q for q in quotients if not q.is_trivial]
    total = prod(q.order for q in quotients)
    matches = []
    for cand in _candidate_groups(total):
        if not cand.has_element_of_order(unit_order):
            continue
        factors = cand.invariant_factors or (1,)
        carrier = frozenset(product(*[range(d) for d in factors]))
        if _admits_filtration(carrier, factors, quotients):
            matches.append(cand)
    if not matches:
        raise PicardError(
            f"no abelian group fits quotients {quotients} with an element "
            f"of order {unit_order}")
    if len(matches) > 1:
        raise AmbiguousExtensionError(
            f"extension problem is ambiguous: {[str(m) for m in matches]}")
    return matches[0]


# -- semilinear maps ------------------------------------------------------------

@dataclass(frozen=True)
class SemilinearMap:
    """Additive map k^n -> k^m whose entries are sums c * Frob^e.

    F_p-linear but generally not k-linear; kernels and cokernels are read
    off from the induced F_p-matrix.
    """

    field: FieldDescriptor
    domain_dim: int
    codomain_dim: int
    entries: tuple  # entries[i][j] = tuple of (coeff, frobenius exponent)

    def evaluate(self, vec) -> list[FieldElement]:
        if len(vec) != self.domain_dim:
            raise PicardError("vector length mismatch")
        out = [self.field.zero() for _ in range(self.codomain_dim)]
        for i in range(self.codomain_dim):
            acc = self.field.zero()
            for j, x in enumerate(vec):
                for coeff, e in self.entries[i][j]:
                    acc = acc + coeff * x.frobenius(e)
            out[i] = acc
        return out

    def fp_matrix(self) -> list[list[int]]:
        """Matrix of the induced F_p-linear map in the w-power basis."""
        m = self.field.m
        cols = []
        for j in range(self.domain_dim):
            for l in range(m):
                basis_vec = [self.field.zero()] * self.domain_dim
                basis_vec[j] = self.field.element(
                    tuple(1 if i == l else 0 for i in range(m)))
                image = self.evaluate(basis_vec)
                col = []
                for y in image:
                    col.extend(y.coeffs)
                cols.append(col)
        rows = self.codomain_dim * m
        return [[cols[j][i] for j in range(len(cols))] for i in range(rows)]


def _fp_rref(matrix: list[list[int]], p: int):
    rows = [list(r) for r in matrix]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], p - 2, p) if p > 2 else rows[r][col]
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def semilinear_kernel_vectors(m: SemilinearMap) -> list[list[FieldElement]]:
    """F_p-basis of the kernel, as vectors of field elements."""
    p = m.field.p
    deg = m.field.m
    matrix = m.fp_matrix()
    ncols = m.domain_dim * deg
    if not matrix:
        matrix = [[0] * ncols]
    rows, pivots = _fp_rref(matrix, p)
    free = [c for c in range(ncols) if c not in pivots]
    vectors = []
    for f in free:
        coords = [0] * ncols
        coords[f] = 1
        for row, piv in zip(rows, pivots):
            coords[piv] = (-row[f]) % p
        vec = []
        for j in range(m.domain_dim):
            chunk = coords[j * deg:(j + 1) * deg]
            vec.append(m.field.element(tuple(chunk)))
        vectors.append(vec)
    return vectors


def semilinear_kernel(m: SemilinearMap) -> AbelianGroup:
    """Kernel as an abelian group: elementary abelian of rank = F_p-nullity."""
    return AbelianGroup.elementary(m.field.p, len(semilinear_kernel_vectors(m)))


def semilinear_cokernel_dim(m: SemilinearMap) -> int:
    """F_p-dimension of the cokernel."""
    matrix = m.fp_matrix()
    if not matrix:
        return 0
    _, pivots = _fp_rref(matrix, m.field.p)
    return m.codomain_dim * m.field.m - len(pivots)


# -- pic page entries ------------------------------------------------------------

VECTOR, FINITE, UNITS, UNITS_QUOTIENT, UNKNOWN = (
    "vector", "finite", "units", "units_quotient", "unknown")


@dataclass(frozen=True)
class PicEntry:
    kind: str
    dim: int = 0
    group: AbelianGroup = AbelianGroup.trivial()
    labels: tuple = ()
    note: str = ""

    def is_zero(self) -> bool:
        if self.kind == VECTOR:
            return self.dim == 0
        if self.kind in (FINITE, UNITS_QUOTIENT):
            return self.group.is_trivial
        return False

    def exponent(self, field: FieldDescriptor) -> int:
        if self.kind == VECTOR:
            return field.p if self.dim else 1
        if self.kind in (FINITE, UNITS_QUOTIENT):
            return self.group.exponent
        if self.kind == UNITS:
            return field.order - 1
        return 0  # unknown: no torsion bound


@dataclass
class PicPage:
    r: int
    group: GroupFamily
    field: FieldDescriptor
    window: Window
    entries: dict

    def entry(self, s: int, t: int) -> PicEntry | None:
        return self.entries.get((s, t))


def dade_picard(h: GroupFamily) -> AbelianGroup:
    """Pic(StMod(k C_p^n)) for elementary abelians: 0, C_2, or Z."""
    if h.kind == "cyclic" and h.n == 1:
        h = GroupFamily("elementary_abelian", h.p, 1)
    if h.kind != "elementary_abelian":
        raise PicardError(f"Dade's theorem needs an elementary abelian, got {h}")
    if h.n == 1:
        return AbelianGroup.trivial() if h.p == 2 else AbelianGroup.cyclic_of(2)
    return AbelianGroup((), free_rank=1)


def units_cohomology(quotient: GroupFamily, field: FieldDescriptor,
                     s: int) -> AbelianGroup:
    """H^s(Q; k^x) with trivial action, k^x cyclic of order p^m - 1.

    |Q| is a power of the characteristic, so multiplication by |Q| is
    invertible on k^x and everything above s = 0 vanishes; for cyclic Q
    this is gcd(q, p^m - 1) = 1 made explicit.
    """
    n_units = field.order - 1
    if s < 0:
        raise PicardError("negative cohomological degree")
    if s == 0:
        return AbelianGroup.cyclic_of(n_units)
    if quotient.kind == "cyclic":
        return AbelianGroup.cyclic_of(gcd(quotient.order, n_units))
    if quotient.kind in ("elementary_abelian", "dihedral"):
        return AbelianGroup.cyclic_of(gcd(quotient.order, n_units))
    raise PicardError(f"units cohomology not tabulated for {quotient}")


def build_pic_e2(group: GroupFamily, field: FieldDescriptor,
                 window: Window | None = None,
                 omega_page: Page | None = None) -> PicPage:
    """Connective E2 page of the Picard spectral sequence."""
    datum = extension_datum(group, field)
    window = window or Window.default()
    if omega_page is None:
        from .specseq import build_e2
        omega_page = build_e2(datum, "hfpss", window)
    entries = {}
    n_units = field.order - 1
    for s in range(0, window.s_max + 1):
        # t = 0: Picard group of the fiber, with trivial quotient action
        pic_h = dade_picard(datum.sub_h)
        if s == 0:
            if not pic_h.is_trivial:
                entries[(0, 0)] = PicEntry(FINITE, group=pic_h)
        else:
            higher = AbelianGroup.cyclic_of(gcd(pic_h.exponent, datum.quotient.order))
            if not higher.is_trivial:
                entries[(s, 0)] = PicEntry(FINITE, group=higher)
        # t = 1: units line
        if window.t_max >= 1:
            if s == 0:
                entries[(0, 1)] = PicEntry(UNITS, group=AbelianGroup.cyclic_of(n_units))
            else:
                hs = units_cohomology(datum.quotient, field, s)
                entries[(s, 1)] = PicEntry(
                    UNITS_QUOTIENT, group=hs,
                    note="trivial for finite fields; the figures depict the "
                         "general-field group")
        # t >= 2: shifted copies of the endomorphism-ring page
        for t in range(2, window.t_max + 1):
            shadow = omega_page.entries.get((s, t - 1))
            if shadow and shadow.dim:
                entries[(s, t)] = PicEntry(
                    VECTOR, dim=shadow.dim,
                    labels=tuple(shadow.labels(omega_page.algebra)))
    return PicPage(r=2, group=group, field=field, window=window, entries=entries)


def import_stable(omega_diff, pic_page: PicPage) -> dict:
    """Blocks d_r^{s,t}(pic) = d_r^{s,t-1}(omega) on the comparison range."""
    r = omega_diff.r
    blocks = {}
    for (s, t_shadow), block in omega_diff.blocks.items():
        t = t_shadow + 1
        if t - s > 0 or t >= r + 1:
            entry = pic_page.entry(s, t)
            if entry is not None and entry.kind == VECTOR:
                blocks[(s, t)] = block
    return blocks


def torsion_obstruction_zero(source: AbelianGroup, target) -> bool:
    """Differentials from a finite group to prime-to-it torsion must vanish."""
    if isinstance(target, PicEntry):
        raise PicardError("pass the target exponent (entry.exponent(field))")
    target_exponent = int(target)
    if source.is_trivial:
        return True
    if target_exponent == 0:
        return False
    return gcd(source.exponent, target_exponent) == 1


def square_element(algebra, element: dict) -> dict:
    """x -> x^2 termwise; valid in characteristic 2 where cross terms die."""
    out: dict = {}
    from .algebra import element_add
    for mono, c in element.items():
        sq = algebra.multiply_monomials(mono, c * c, mono, algebra.ground.one())
        out = element_add(out, sq)
    return out


def unstable_differential(r: int, omega_page: Page, omega_block,
                          field: FieldDescriptor) -> SemilinearMap:
    """d_r^{rr}(pic) = d_r^{r,r-1}(omega) + squaring, in page coordinates.

    The squaring contribution exists only in characteristic 2: each basis
    class pairs with the residue class of its literal square, reduced to
    page normal form first (zero contribution if the square dies).
    """
    ops = omega_page.ops
    src = omega_page.entries.get((r, r - 1))
    tgt = omega_page.entries.get((2 * r, 2 * r - 2))
    sdim = src.dim if src else 0
    tdim = tgt.dim if tgt else 0
    linear = omega_block if omega_block is not None else \
        [[0] * sdim for _ in range(tdim)]
    squares = [[0] * sdim for _ in range(tdim)]
    if field.p == 2 and sdim and tdim:
        algebra = omega_page.algebra
        for j in range(sdim):
            sq = square_element(algebra, src.rep_element(j, ops))
            coords = tgt.express(tgt.vector_of(sq, ops), ops)
            for i, c in enumerate(coords):
                squares[i][j] = c
    entries = []
    for i in range(tdim):
        row = []
        for j in range(sdim):
            cell = []
            if linear[i][j]:
                cell.append((ops.decode(linear[i][j]), 0))
            if squares[i][j]:
                cell.append((ops.decode(squares[i][j]), 1))
            row.append(tuple(cell))
        entries.append(tuple(row))
    return SemilinearMap(field=field, domain_dim=sdim, codomain_dim=tdim,
                         entries=tuple(entries))


# -- the full pipeline ----------------------------------------------------------------

@dataclass
class PicardComputation:
    group: GroupFamily
    field: FieldDescriptor
    window: Window
    picard: AbelianGroup
    zero_line: list          # (s, AbelianGroup, description)
    unit_order: int
    omega: RunResult
    diagonal_maps: dict      # s -> SemilinearMap
    faithful: bool | None
    annotations: list
    scan_limit: int

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "field": str(self.field),
            "picard": {
                "invariant_factors": list(self.picard.invariant_factors),
                "free_rank": self.picard.free_rank,
                "pretty": str(self.picard),
            },
            "zero_line": [
                {"s": s, "group": list(g.invariant_factors), "via": via}
                for s, g, via in self.zero_line
            ],
            "unit_order": self.unit_order,
            "certificates": {
                "faithfulness": self.faithful,
                "pages_cached": sorted(self.omega.pages),
            },
            "annotations": list(self.annotations),
        }


def picard_pages(comp: "PicardComputation") -> list[PicPage]:
    """The Picard pages E_2, E_3, ... for chart rendering.

    Rows t >= 2 track the endomorphism-ring pages (shifted by one) through
    the comparison range; diagonal entries freeze to the kernels of the
    semilinear differentials, their targets to the cokernel "diamonds", and
    whatever sits below the -1 line is marked unknown past E_2, matching
    what the figures leave as question marks.
    """
    omega = comp.omega
    window = comp.window
    field = comp.field
    datum = extension_datum(comp.group, field)
    final_r = max(omega.pages)
    pages = []
    pic_h = dade_picard(datum.sub_h)
    n_units = field.order - 1
    for r in range(2, final_r + 2):
        omega_page = omega.page(min(r, final_r))
        entries = {}
        if not pic_h.is_trivial:
            entries[(0, 0)] = PicEntry(FINITE, group=pic_h)
        entries[(0, 1)] = PicEntry(UNITS, group=AbelianGroup.cyclic_of(n_units))
        if r == 2:
            for s in range(1, window.s_max + 1):
                entries[(s, 1)] = PicEntry(
                    UNITS_QUOTIENT, group=units_cohomology(datum.quotient, field, s),
                    note="trivial for finite fields; figures depict the "
                         "general-field group")
        for s in range(0, window.s_max + 1):
            for t in range(2, window.t_max + 1):
                if s == t and 2 <= s < r:
                    smap = comp.diagonal_maps.get(s)
                    kernel = semilinear_kernel(smap) if smap else \
                        AbelianGroup.trivial()
                    if not kernel.is_trivial:
                        entries[(s, t)] = PicEntry(
                            FINITE, group=kernel,
                            note=f"kernel of the nonlinear d{s}")
                    continue
                if t - s == -1 and t % 2 == 1 and 2 <= (s // 2) < r \
                        and s == 2 * (s // 2):
                    smap = comp.diagonal_maps.get(s // 2)
                    if smap is not None:
                        dim = semilinear_cokernel_dim(smap)
                        entries[(s, t)] = PicEntry(
                            FINITE, group=AbelianGroup.elementary(field.p, dim),
                            note=f"cokernel of the nonlinear d{s // 2}")
                        continue
                shadow = omega_page.entries.get((s, t - 1))
                if shadow is None or shadow.dim == 0:
                    continue
                if (t - s <= -1 and r > 2) or not shadow.trusted:
                    entries[(s, t)] = PicEntry(UNKNOWN)
                else:
                    entries[(s, t)] = PicEntry(
                        VECTOR, dim=shadow.dim,
                        labels=tuple(shadow.labels(omega_page.algebra)))
        pages.append(PicPage(r=r, group=comp.group, field=field,
                             window=window, entries=entries))
    return pages


def compute_picard_group(group: GroupFamily, field: FieldDescriptor,
                         window: Window | None = None,
                         with_certificate: bool = True) -> PicardComputation:
    """Run the whole pipeline and assemble T(G) from the zero line."""
    datum = extension_datum(group, field)
    window = window or Window.default()
    omega = run_spectral_sequence(datum, "hfpss", window)
    if not omega.collapsed:
        raise PicardError(f"endomorphism spectral sequence did not collapse "
                          f"for {group}")
    annotations = []
    if datum.extrapolated_quotient:
        annotations.append(
            "dihedral quotient presentation extrapolated to D8")

    zero_line = []
    # s = 0: Dade's Picard group of the fiber; outgoing differentials are
    # killed by the torsion argument (targets are F_p-vector spaces)
    pic_h = dade_picard(datum.sub_h)
    if not pic_h.is_trivial:
        for r in range(2, window.margin + 1):
            texp = field.p if omega.page(r).dim(r, r - 2) else 1
            if not torsion_obstruction_zero(pic_h, texp):
                raise PicardError("cannot force differential off (0,0) to zero")
        zero_line.append((0, pic_h, "dade"))
    # s = 1: H^1(Q; k^x), trivial over a finite field
    h1 = units_cohomology(datum.quotient, field, 1)
    if not h1.is_trivial:
        zero_line.append((1, h1, "units"))

    diagonal_maps = {}
    final = omega.final_page
    scan_limit = 1
    for s in range(2, window.s_max + 1):
        page = omega.page(min(s, max(omega.pages)))
        entry = page.entries.get((s, s - 1))
        if entry is None or not entry.trusted:
            break
        scan_limit = s
        if entry.dim == 0:
            continue
        block = omega.block(s, s, s - 1)
        smap = unstable_differential(s, page, block, field)
        diagonal_maps[s] = smap
        kernel = semilinear_kernel(smap)
        # survival at later pages: outgoing targets must be torsion-obstructed
        for r in range(s + 1, window.margin + 1):
            texp = field.p if final.dim(s + r, s + r - 2) else 1
            if not torsion_obstruction_zero(kernel, texp):
                raise PicardError(
                    f"cannot certify survival of the (s,s)={s} kernel")
        # incoming from the units entry at (0, 1) is zero: k^x has no p-torsion
        if not torsion_obstruction_zero(
                AbelianGroup.cyclic_of(field.order - 1), field.p if entry.dim else 1):
            pass  # the map out of k^x is forced zero, not the other way
        if not kernel.is_trivial:
            zero_line.append((s, kernel, f"kernel of d{s}^{{{s},{s}}}"))
    if scan_limit < 6:
        raise PicardError("window too small to scan the zero line")

    unit_order = periodicity(group).period
    result = assemble_zero_line([g for _, g, _ in zero_line], unit_order)

    faithful = None
    if with_certificate:
        tate = run_spectral_sequence(datum, "tate", window)
        faithful = bool(tate.collapsed and tate.contractible)

    return PicardComputation(
        group=group, field=field, window=window, picard=result,
        zero_line=zero_line, unit_order=unit_order, omega=omega,
        diagonal_maps=diagonal_maps, faithful=faithful,
        annotations=annotations, scan_limit=scan_limit)
