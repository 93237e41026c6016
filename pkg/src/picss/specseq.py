"""Windowed multiplicative spectral-sequence engine.

Pages are bigraded: entry (s, t) holds an ordered basis of residue classes
of monomials of the E2 lattice, represented as row-reduced vectors over
that lattice together with the accumulated boundary space.  Differentials
d_r: (s, t) -> (s+r, t+r-1) are generated from seed differentials on the
coefficient classes t1 (page 2) and t1^2 (page 3) by the Leibniz rule;
generators of the quotient ring are permanent cycles, and on dual (alpha)
classes multiplication goes through the truncated dual action.  Page
turning is bidegree-wise homology with graded-lex echelon pivots, so class
labels are reproducible run to run.

All linear algebra runs on int-encoded field elements (gf.FieldOps
tables); decoding back to FieldElement happens only at module edges.

Correctness is windowed: an entry stays `trusted` only while its full
differential history lies inside the window, certificates (collapse,
contractibility) quantify over the window interior, and pages of periodic
families are checked to repeat along t under the family's Tate period.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field as dc_field

from .algebra import (Element, Monomial, RingPresentation, element_add,
                      element_scale)
from .gf import FieldOps, field_ops


class SpectralSequenceError(RuntimeError):
    pass


class AmbiguousPairingError(SpectralSequenceError):
    pass


VARIANTS = ("hs", "hfpss", "tate")


@dataclass(frozen=True)
class Window:
    s_min: int
    s_max: int
    t_min: int
    t_max: int
    margin: int = 6

    def __post_init__(self):
        if self.margin < 5:
            raise SpectralSequenceError("window margin must be >= 5")

    @classmethod
    def default(cls) -> "Window":
        return cls(-12, 12, -12, 12, margin=6)

    def contains(self, s: int, t: int) -> bool:
        return self.s_min <= s <= self.s_max and self.t_min <= t <= self.t_max

    def positions(self):
        for s in range(self.s_min, self.s_max + 1):
            for t in range(self.t_min, self.t_max + 1):
                yield (s, t)

    def to_json(self):
        return [self.s_min, self.s_max, self.t_min, self.t_max, self.margin]


# -- exact linear algebra on int-encoded field elements -------------------------

def _row_sub(row, other, c, ops: FieldOps):
    """row - c * other."""
    mul_c = ops.mul[c]
    add = ops.add
    neg = ops.neg
    return [add[a][neg[mul_c[b]]] for a, b in zip(row, other)]


def _rref(rows, ops: FieldOps):
    """Reduced row echelon form; returns (rows, pivot columns), pivots sorted."""
    out = []
    pivots = []
    for row in rows:
        v = list(row)
        for prow, pcol in zip(out, pivots):
            c = v[pcol]
            if c:
                v = _row_sub(v, prow, c, ops)
        lead = next((i for i, a in enumerate(v) if a), None)
        if lead is None:
            continue
        inv = ops.inv[v[lead]]
        mul_inv = ops.mul[inv]
        v = [mul_inv[a] for a in v]
        for i, prow in enumerate(out):
            c = prow[lead]
            if c:
                out[i] = _row_sub(prow, v, c, ops)
        out.append(v)
        pivots.append(lead)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


def _reduce_mod(v, rows, pivots, ops: FieldOps):
    v = list(v)
    for row, col in zip(rows, pivots):
        c = v[col]
        if c:
            v = _row_sub(v, row, c, ops)
    return v


def _matmul(a, b, ops: FieldOps):
    """(rows x mid) @ (mid x cols) over the field tables."""
    if not a or not b:
        return []
    cols = len(b[0])
    add = ops.add
    out = []
    for row in a:
        acc = [0] * cols
        for k, c in enumerate(row):
            if c:
                mul_c = ops.mul[c]
                brow = b[k]
                acc = [add[x][mul_c[y]] for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def _nullspace(matrix, dim, ops: FieldOps):
    """Kernel basis of a (rows x dim) matrix, free columns ascending."""
    if dim == 0:
        return []
    if not matrix:
        return [[1 if j == i else 0 for j in range(dim)] for i in range(dim)]
    rows, pivots = _rref(matrix, ops)
    free = [j for j in range(dim) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * dim
        vec[f] = 1
        for row, p in zip(rows, pivots):
            vec[p] = ops.neg[row[f]]
        basis.append(vec)
    return basis


# -- pages --------------------------------------------------------------------------

class Entry:
    """Subquotient of one E2 lattice position: reps modulo boundaries.

    `trusted` records whether the full differential history of the position
    stayed inside the window; only trusted dimensions feed oracle checks.
    """

    __slots__ = ("monomials", "reps", "rep_pivots", "boundaries", "bnd_pivots",
                 "trusted")

    def __init__(self, monomials, reps, rep_pivots, boundaries, bnd_pivots,
                 trusted=True):
        self.monomials = tuple(monomials)
        self.reps = reps
        self.rep_pivots = rep_pivots
        self.boundaries = boundaries
        self.bnd_pivots = bnd_pivots
        self.trusted = trusted

    @property
    def dim(self) -> int:
        return len(self.reps)

    def labels(self, algebra) -> list[str]:
        return [algebra.monomial_str(self.monomials[p]) for p in self.rep_pivots]

    def vector_of(self, element: Element, ops: FieldOps) -> list[int]:
        index = {m: i for i, m in enumerate(self.monomials)}
        v = [0] * len(self.monomials)
        for m, c in element.items():
            if m not in index:
                raise SpectralSequenceError("element leaves the entry lattice")
            v[index[m]] = ops.encode(c)
        return v

    def express(self, v, ops: FieldOps) -> list[int]:
        """Class coordinates of an E2-lattice vector; errors if not a class."""
        v = _reduce_mod(v, self.boundaries, self.bnd_pivots, ops)
        coords = []
        for row, p in zip(self.reps, self.rep_pivots):
            c = v[p]
            coords.append(c)
            if c:
                v = _row_sub(v, row, c, ops)
        if any(v):
            raise SpectralSequenceError("vector is not a class of this entry")
        return coords

    def combine(self, coords, ops: FieldOps) -> list[int]:
        v = [0] * len(self.monomials)
        add = ops.add
        for c, row in zip(coords, self.reps):
            if c:
                mul_c = ops.mul[c]
                v = [add[a][mul_c[b]] for a, b in zip(v, row)]
        return v

    def element(self, coords, algebra, ops: FieldOps) -> Element:
        vec = self.combine(coords, ops)
        return {self.monomials[i]: ops.decode(c)
                for i, c in enumerate(vec) if c}

    def rep_element(self, i: int, ops: FieldOps) -> Element:
        return {self.monomials[k]: ops.decode(c)
                for k, c in enumerate(self.reps[i]) if c}


def entry_from_monomials(algebra, monomials) -> Entry:
    n = len(monomials)
    reps = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return Entry(monomials, reps, list(range(n)), [], [])


@dataclass
class Page:
    r: int
    variant: str
    window: Window
    algebra: RingPresentation
    entries: dict
    period: int = 0
    meta: dict = dc_field(default_factory=dict)

    @property
    def ops(self) -> FieldOps:
        return field_ops(self.algebra.ground)

    def dim(self, s: int, t: int) -> int:
        e = self.entries.get((s, t))
        return e.dim if e else 0

    def interior(self, s: int, t: int) -> bool:
        w = self.window
        m = w.margin
        s_lo = 0 if self.variant in ("hs", "hfpss") else w.s_min + m
        if not (s_lo <= s <= w.s_max - m):
            return False
        t_hi = 0 if self.variant == "hs" else w.t_max - m
        return w.t_min + m <= t <= t_hi

    def provably_zero(self, s: int, t: int) -> bool:
        """Positions outside the variant's support vanish regardless of window."""
        if self.variant in ("hs", "hfpss") and s < 0:
            return True
        if self.variant == "hs" and t > 0:
            return True
        return False

    def total_dims(self, trusted_only: bool = False) -> dict[int, int]:
        out: dict[int, int] = {}
        for (s, t), e in self.entries.items():
            if e.dim and (e.trusted or not trusted_only):
                out[t - s] = out.get(t - s, 0) + e.dim
        return out


@dataclass
class DifferentialMap:
    """Blocks of d_r keyed by source position; rows target, cols source.

    Matrix entries are int-encoded field elements.  A missing block means
    the target lies outside the window (treated as an unknown, zero map).
    """

    r: int
    blocks: dict

    def block(self, s: int, t: int):
        return self.blocks.get((s, t))


# -- building E2 ------------------------------------------------------------------------

def merge_rings(name: str, left: RingPresentation,
                right: RingPresentation) -> RingPresentation:
    """Tensor of an s-graded and a t-graded presentation over one field."""
    if left.ground != right.ground:
        raise SpectralSequenceError("merge_rings: ground fields differ")
    gens = list(left.generators) + list(right.generators)
    pad_r = (0,) * len(right.generators)
    pad_l = (0,) * len(left.generators)
    rules = []
    for lead, repl in left.rules:
        rules.append((Monomial(lead.exponents + pad_r),
                      {Monomial(m.exponents + pad_r): c for m, c in repl.items()}))
    for lead, repl in right.rules:
        rules.append((Monomial(pad_l + lead.exponents),
                      {Monomial(pad_l + m.exponents): c for m, c in repl.items()}))
    dualizable = [left.generators[i].name for i in left.dualizable]
    return RingPresentation(name, left.ground, gens, rules,
                            dualizable=dualizable, dual_offset=left.dual_offset)


def build_e2(datum, variant: str, window: Window | None = None) -> Page:
    """Tensor-product E2 page of the chosen variant for one extension."""
    if variant not in VARIANTS:
        raise SpectralSequenceError(f"unknown variant {variant!r}")
    window = window or Window.default()
    if variant == "hs":
        quotient = datum.quotient_cohomology
        coefficient = datum.coefficient_fixed
    elif variant == "hfpss":
        quotient = datum.quotient_cohomology
        coefficient = datum.coefficient_tate
    else:
        quotient = datum.quotient_tate.positive
        coefficient = datum.coefficient_tate
    algebra = merge_rings(f"E2({datum.whole}/{variant})", quotient, coefficient)
    entries = {}
    for s, t in window.positions():
        if variant in ("hs", "hfpss") and s < 0:
            continue
        monos = algebra.basis((s, t))
        if monos:
            entries[(s, t)] = entry_from_monomials(algebra, monos)
    return Page(
        r=2, variant=variant, window=window, algebra=algebra, entries=entries,
        period=datum.period,
        meta={
            "group": str(datum.whole),
            "field": str(datum.field),
            "quotient": str(datum.quotient),
            "quotient_gens": [g.name for g in quotient.generators],
        })


def translate_seeds(datum, algebra: RingPresentation) -> dict[int, tuple[int, Element]]:
    """Seed targets as elements of a page's merged algebra, keyed by page."""
    out = {}
    for seed in datum.seeds:
        elem = algebra.element([(exps, c) for exps, c in seed.target_terms()])
        out[seed.page] = (seed.source_exp, elem)
    return out


# -- differentials ----------------------------------------------------------------------

def _derive_monomial(algebra: RingPresentation, m: Monomial, c,
                     src_exp: int, target: Element, t1_idx: int) -> Element:
    """Leibniz derivative of one monomial from d(t1^src_exp) = target."""
    j = m.exponents[t1_idx]
    step = j // src_exp
    k = step % algebra.ground.p
    if k == 0:
        return {}
    exps = list(m.exponents)
    exps[t1_idx] = j - src_exp
    m2 = Monomial(tuple(exps), m.dual)
    coeff = c.scale(k)
    if algebra.ground.p != 2 and (algebra.total_degree(m) + j) % 2:
        coeff = -coeff
    return element_scale(algebra.multiply({m2: algebra.ground.one()}, target),
                         coeff)


def derive(algebra: RingPresentation, element: Element, src_exp: int,
           target: Element, t1_idx: int) -> Element:
    out: Element = {}
    for m, c in element.items():
        out = element_add(out, _derive_monomial(algebra, m, c, src_exp,
                                                target, t1_idx))
    return out


def propagate(page: Page, seed: tuple[int, Element]) -> DifferentialMap:
    """Leibniz closure of the page's seed differential over all entries."""
    algebra = page.algebra
    ops = page.ops
    t1_idx = algebra.index["t1"]
    src_exp, target = seed
    r = page.r
    blocks = {}
    for (s, t), entry in sorted(page.entries.items()):
        if entry.dim == 0:
            continue
        tpos = (s + r, t + r - 1)
        if not page.window.contains(*tpos):
            continue
        tentry = page.entries.get(tpos)
        cols = []
        for i in range(entry.dim):
            image = derive(algebra, entry.rep_element(i, ops), src_exp,
                           target, t1_idx)
            cols.append(_express_image(tentry, image, ops))
        # boundaries of the source must map into boundaries of the target
        for bvec in entry.boundaries:
            belem = {entry.monomials[k]: ops.decode(c)
                     for k, c in enumerate(bvec) if c}
            image = derive(algebra, belem, src_exp, target, t1_idx)
            if any(_express_image(tentry, image, ops)):
                raise SpectralSequenceError(
                    f"differential not defined on page classes at {(s, t)}")
        tdim = tentry.dim if tentry else 0
        blocks[(s, t)] = [[cols[j][i] for j in range(entry.dim)]
                          for i in range(tdim)]
    return DifferentialMap(r, blocks)


def _express_image(tentry, image: Element, ops: FieldOps) -> list[int]:
    if tentry is None:
        if image:
            raise SpectralSequenceError(
                "differential image escapes the window lattice")
        return []
    return tentry.express(tentry.vector_of(image, ops), ops)


def zero_differential(r: int) -> DifferentialMap:
    return DifferentialMap(r, {})


def infer_killing_differential(page: Page, r: int) -> DifferentialMap:
    """The unique pairing differential killing everything, identity blocks.

    Every trusted nonzero entry must have exactly one degree-compatible
    trusted nonzero partner of equal dimension; scalars normalize to 1.
    Untrusted window-edge entries are left alone.
    """

    def trusted_dim(pos):
        e = page.entries.get(pos)
        return e.dim if (e and e.trusted) else 0

    blocks = {}
    for (s, t), entry in sorted(page.entries.items()):
        if entry.dim == 0 or not entry.trusted:
            continue
        tpos = (s + r, t + r - 1)
        spos = (s - r, t - r + 1)
        partners = []
        if page.window.contains(*tpos) and trusted_dim(tpos):
            partners.append(("out", tpos))
        if page.window.contains(*spos) and trusted_dim(spos):
            partners.append(("in", spos))
        if not partners:
            continue
        if len(partners) == 2:
            raise AmbiguousPairingError(
                f"entry {(s, t)} pairs both ways for d_{r}")
        kind, pos = partners[0]
        if kind == "out":
            if trusted_dim(pos) != entry.dim:
                raise SpectralSequenceError(
                    f"pairing dimension mismatch {(s, t)} -> {pos}")
            n = entry.dim
            blocks[(s, t)] = [[1 if i == j else 0 for j in range(n)]
                              for i in range(n)]
    return DifferentialMap(r, blocks)


# -- page turning --------------------------------------------------------------------------

def turn_page(page: Page, diff: DifferentialMap) -> Page:
    if diff.r != page.r:
        raise SpectralSequenceError("differential page does not match")
    ops = page.ops
    r = page.r
    _check_d_squared(page, diff, ops)
    new_entries = {}
    for (s, t), entry in page.entries.items():
        out_block = diff.blocks.get((s, t))
        if out_block is None:
            kernel = [[1 if j == i else 0 for j in range(entry.dim)]
                      for i in range(entry.dim)]
        else:
            kernel = _nullspace(out_block, entry.dim, ops)
        cycles = [entry.combine(coords, ops) for coords in kernel]
        boundaries = list(entry.boundaries)
        in_block = diff.blocks.get((s - r, t - r + 1))
        if in_block:
            src_dim = len(in_block[0])
            for j in range(src_dim):
                coords = [in_block[i][j] for i in range(len(in_block))]
                boundaries.append(entry.combine(coords, ops))
        bnd_rows, bnd_pivots = _rref(boundaries, ops)
        reduced = [_reduce_mod(v, bnd_rows, bnd_pivots, ops) for v in cycles]
        rep_rows, rep_pivots = _rref(reduced, ops)
        trusted = entry.trusted
        for pos in ((s + r, t + r - 1), (s - r, t - r + 1)):
            if not page.window.contains(*pos) and not page.provably_zero(*pos):
                trusted = False
        new_entries[(s, t)] = Entry(entry.monomials, rep_rows, rep_pivots,
                                    bnd_rows, bnd_pivots, trusted)
    return Page(r=page.r + 1, variant=page.variant, window=page.window,
                algebra=page.algebra, entries=new_entries, period=page.period,
                meta=dict(page.meta))


def _check_d_squared(page: Page, diff: DifferentialMap, ops: FieldOps):
    r = page.r
    for (s, t), first in diff.blocks.items():
        second = diff.blocks.get((s + r, t + r - 1))
        if not first or not second:
            continue
        comp = _matmul(second, first, ops)
        if any(any(row) for row in comp):
            raise SpectralSequenceError(f"d∘d != 0 out of {(s, t)} on page {r}")


# -- certificates ----------------------------------------------------------------------------

def is_collapsed(page: Page) -> bool:
    """No compatible (source, target) pair of nonzero interior entries."""
    for r in range(2, page.window.margin + 1):
        for (s, t), entry in page.entries.items():
            if entry.dim == 0 or not page.interior(s, t):
                continue
            tpos = (s + r, t + r - 1)
            if page.interior(*tpos) and page.dim(*tpos):
                return False
    return True


def is_contractible(page: Page) -> bool:
    if not is_collapsed(page):
        raise SpectralSequenceError("page has potential differentials left")
    return all(entry.dim == 0 for (s, t), entry in page.entries.items()
               if page.interior(s, t))


def _periodic_t_generator(algebra: RingPresentation):
    """The even coefficient class tracking t-periodicity (t1 or t2)."""
    for i, g in enumerate(algebra.generators):
        if g.degree[0] == 0 and g.degree[1] < 0 and g.parity == "even":
            return i, -g.degree[1]
    return None


def assert_periodic(page: Page, diff: DifferentialMap | None = None):
    """Interior entries (and blocks) must repeat along t under the period."""
    period = page.period
    if not period:
        return
    gen = _periodic_t_generator(page.algebra)
    if gen is None or period % gen[1]:
        return
    idx, step = gen
    delta = period // step  # entry at (s, t - period) carries exponent + delta
    for (s, t), entry in page.entries.items():
        if not page.interior(s, t) or not page.interior(s, t - period):
            continue
        other = page.entries.get((s, t - period))
        odim = other.dim if other else 0
        if entry.dim != odim:
            raise SpectralSequenceError(f"page not {period}-periodic at {(s, t)}")
        if entry.dim:
            shifted = {_shift_exponent(m, idx, delta) for m
                       in (entry.monomials[p] for p in entry.rep_pivots)}
            labels_other = {other.monomials[p] for p in other.rep_pivots}
            if shifted != labels_other:
                raise SpectralSequenceError(
                    f"page labels not {period}-periodic at {(s, t)}")
        if diff is not None:
            b1 = diff.blocks.get((s, t))
            b2 = diff.blocks.get((s, t - period))
            tpos = (s + diff.r, t + diff.r - 1)
            if (page.interior(*tpos) and page.interior(tpos[0], tpos[1] - period)
                    and b1 is not None and b2 is not None and b1 != b2):
                raise SpectralSequenceError(
                    f"differential not {period}-periodic at {(s, t)}")


def _shift_exponent(m: Monomial, idx: int, delta: int) -> Monomial:
    exps = list(m.exponents)
    exps[idx] += delta
    return Monomial(tuple(exps), m.dual)


# -- run driver --------------------------------------------------------------------------------

@dataclass
class RunResult:
    variant: str
    window: Window
    pages: dict
    diffs: dict
    collapsed: bool
    contractible: bool | None
    meta: dict

    @property
    def final_page(self) -> Page:
        return self.pages[max(self.pages)]

    def page(self, r: int) -> Page:
        """Page r, extending by the final page once the run stabilized."""
        if r in self.pages:
            return self.pages[r]
        top = max(self.pages)
        if r > top:
            return self.pages[top]
        raise SpectralSequenceError(f"page {r} not computed")

    def block(self, r: int, s: int, t: int):
        d = self.diffs.get(r)
        return d.block(s, t) if d else None


def run_spectral_sequence(datum, variant: str, window: Window | None = None,
                          check_periodicity: bool = True) -> RunResult:
    window = window or Window.default()
    if window.t_max - window.t_min + 1 < 3 * datum.period:
        raise SpectralSequenceError("window does not cover three periods")
    page = build_e2(datum, variant, window)
    seeds = translate_seeds(datum, page.algebra)
    pages = {2: page}
    diffs = {}
    while page.r <= window.margin:
        if is_collapsed(page):
            break
        r = page.r
        if r in seeds:
            diff = propagate(page, seeds[r])
        elif variant == "tate":
            diff = infer_killing_differential(page, r)
        else:
            diff = zero_differential(r)
        if check_periodicity:
            assert_periodic(page, diff)
        diffs[r] = diff
        page = turn_page(page, diff)
        if check_periodicity:
            assert_periodic(page)
        pages[page.r] = page
    collapsed = is_collapsed(page)
    contractible = None
    if variant == "tate" and collapsed:
        contractible = is_contractible(page)
    return RunResult(variant=variant, window=window, pages=pages, diffs=diffs,
                     collapsed=collapsed, contractible=contractible,
                     meta=dict(page.meta))


# -- serialization and cache ----------------------------------------------------------------------

def page_to_json(page: Page, diff: DifferentialMap | None = None) -> dict:
    ops = page.ops
    entries = []
    for (s, t) in sorted(page.entries):
        entry = page.entries[(s, t)]
        if entry.dim:
            entries.append({"s": s, "t": t,
                            "basis": entry.labels(page.algebra)})
    differentials = []
    if diff:
        for (s, t) in sorted(diff.blocks):
            block = diff.blocks[(s, t)]
            if block and any(any(row) for row in block):
                differentials.append({
                    "s": s, "t": t,
                    "matrix": [[str(ops.decode(c)) for c in row]
                               for row in block],
                })
    return {
        "r": page.r,
        "variant": page.variant,
        "window": page.window.to_json(),
        "meta": dict(page.meta),
        "entries": entries,
        "differentials": differentials,
    }


def run_to_json(result: RunResult) -> dict:
    return {
        "variant": result.variant,
        "window": result.window.to_json(),
        "meta": result.meta,
        "collapsed": result.collapsed,
        "contractible": result.contractible,
        "pages": [page_to_json(result.pages[r], result.diffs.get(r))
                  for r in sorted(result.pages)],
    }


def content_key(*parts) -> str:
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class PageCache:
    """Disk cache of serialized runs keyed by content hash."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)

    def path(self, key: str) -> str:
        return os.path.join(self.root, f"{key}.json")

    def load(self, key: str) -> dict | None:
        path = self.path(key)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            return json.load(fh)

    def store(self, key: str, payload: dict) -> str:
        path = self.path(key)
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
        return path
