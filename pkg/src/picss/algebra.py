"""Presented bigraded-commutative rings with confluent rewrite normal forms.

A ring is a list of generators with (s, t)-bidegrees plus oriented rewrite
rules lead -> replacement, decreasing in graded-lex order so rewriting
terminates; local confluence of the rule set is checked at construction.
Invertible generators admit negative exponents (the Laurent part of the
periodic Tate rings).  Rings of p-rank >= 2 additionally carry a dual part
whose classes are written alpha * m^{-1} for m a monomial of the positive
part, sitting in degree -deg(m) - 1: the "inverse monomial" model of
negative Tate cohomology.

Products carry Koszul signs from total-degree parity.  Products of two
dual classes vanish; a positive class acts on a dual class by exponentwise
subtraction, truncated to zero as soon as the exponent of any dualizable
generator would become positive.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .gf import FieldDescriptor, FieldElement

Bidegree = tuple[int, int]


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: Bidegree
    parity: str = "even"  # "odd" generators square to zero
    invertible: bool = False

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise AlgebraError(f"bad parity {self.parity!r}")
        if self.parity == "odd" and self.invertible:
            raise AlgebraError(f"{self.name}: odd generators cannot be inverted")

    @property
    def total_degree(self) -> int:
        return self.degree[0] + self.degree[1]


@dataclass(frozen=True)
class Monomial:
    """Exponent vector over a ring's generators; dual marks alpha-classes."""

    exponents: tuple[int, ...]
    dual: bool = False

    def __mul__(self, other):  # raw exponent sum; sign handled by the ring
        return Monomial(
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
            self.dual or other.dual,
        )


# An element is a finite map Monomial -> nonzero FieldElement.
Element = dict


def element_add(a: Element, b: Element) -> Element:
    out = dict(a)
    for m, c in b.items():
        acc = out.get(m)
        s = c if acc is None else acc + c
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s
    return out


def element_scale(a: Element, c: FieldElement) -> Element:
    if c.is_zero():
        return {}
    return {m: v * c for m, v in a.items()}


class RingPresentation:
    """Bigraded-commutative k-algebra given by generators and rewrite rules.

    rules: pairs (lead, replacement); the replacement is homogeneous of the
    lead's bidegree and strictly smaller in graded-lex.  dualizable names
    the generators whose monomials the dual ("alpha") classes invert; an
    empty collection means the ring has no dual part.
    """

    def __init__(self, name, ground: FieldDescriptor, generators, rules=(),
                 dualizable=(), dual_offset: Bidegree = (-1, 0), check=True):
        self.name = name
        self.ground = ground
        self.generators: tuple[GeneratorSpec, ...] = tuple(generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise AlgebraError("duplicate generator names")
        self.dualizable = tuple(sorted(self.index[n] for n in dualizable))
        self.dual_offset = dual_offset
        self.rules = [self._coerce_rule(lead, repl) for lead, repl in rules]
        for i, g in enumerate(self.generators):
            if g.parity == "odd":
                lead = self.monomial({g.name: 2})
                if not any(r[0] == lead for r in self.rules):
                    self.rules.append((lead, {}))
        if check:
            self._validate()

    # -- construction helpers --------------------------------------------

    def monomial(self, exps=None, dual=False) -> Monomial:
        vec = [0] * len(self.generators)
        if exps:
            for name, e in exps.items():
                vec[self.index[name]] = e
        m = Monomial(tuple(vec), dual)
        self._check_monomial(m)
        return m

    def _check_monomial(self, m: Monomial):
        if m.dual and not self.dualizable:
            raise AlgebraError(f"{self.name} has no dual part")
        for i, e in enumerate(m.exponents):
            if e == 0:
                continue
            g = self.generators[i]
            if m.dual and i in self.dualizable:
                if e > 0:
                    raise AlgebraError(f"dual monomial with positive {g.name}-exponent")
            elif e < 0 and not g.invertible:
                raise AlgebraError(f"negative exponent on non-invertible {g.name}")
            elif m.dual and not g.invertible:
                raise AlgebraError(f"dual monomial touches non-dualizable {g.name}")

    def element(self, terms) -> Element:
        """terms: iterable of (exps dict | Monomial, int | FieldElement)."""
        out: Element = {}
        for mono, c in terms:
            if not isinstance(mono, Monomial):
                mono = self.monomial(mono)
            coeff = c if isinstance(c, FieldElement) else self.ground.one().scale(c)
            if not coeff.is_zero():
                out = element_add(out, {mono: coeff})
        return self.normal_form(out)

    def one(self) -> Element:
        return {self.monomial(): self.ground.one()}

    def _coerce_monomial(self, spec) -> Monomial:
        if isinstance(spec, Monomial):
            return spec
        if not isinstance(spec, dict):
            spec = dict(spec)  # tuple of (name, exp) pairs
        return self.monomial(spec)

    def _coerce_rule(self, lead, repl):
        lead = self._coerce_monomial(lead)
        fixed: Element = {}
        items = repl.items() if isinstance(repl, dict) else repl
        for mono, c in items:
            mono = self._coerce_monomial(mono)
            coeff = c if isinstance(c, FieldElement) else self.ground.one().scale(c)
            if not coeff.is_zero():
                fixed[mono] = coeff
        return (lead, fixed)

    # -- degrees and ordering ----------------------------------------------

    def degree(self, m: Monomial) -> Bidegree:
        s = t = 0
        for e, g in zip(m.exponents, self.generators):
            if e:
                s += e * g.degree[0]
                t += e * g.degree[1]
        if m.dual:
            s += self.dual_offset[0]
            t += self.dual_offset[1]
        return (s, t)

    def total_degree(self, m: Monomial) -> int:
        s, t = self.degree(m)
        return s + t

    @staticmethod
    def sort_key(m: Monomial):
        # graded-lex within a fixed bidegree: descending lex on exponents
        return m.exponents

    def sorted_monomials(self, monos):
        return sorted(monos, key=self.sort_key, reverse=True)

    # -- products ------------------------------------------------------------

    def _koszul_sign(self, a: Monomial, b: Monomial) -> int:
        if self.ground.p == 2:
            return 1
        odd = [i for i, g in enumerate(self.generators) if g.total_degree % 2]
        sign = 1
        for pos, i in enumerate(odd):
            ai = a.exponents[i]
            if not ai:
                continue
            swaps = sum(b.exponents[j] for j in odd[:pos])
            if (ai * swaps) % 2:
                sign = -sign
        return sign

    def multiply_monomials(self, a: Monomial, ca: FieldElement,
                           b: Monomial, cb: FieldElement) -> Element:
        if a.dual and b.dual:
            return {}
        if a.dual:
            return self._dual_action_mono(b, cb, a, ca)
        if b.dual:
            return self._dual_action_mono(a, ca, b, cb)
        coeff = ca * cb
        if self._koszul_sign(a, b) == -1:
            coeff = -coeff
        if coeff.is_zero():
            return {}
        return self.normal_form({a * b: coeff})

    def multiply(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                out = element_add(out, self.multiply_monomials(ma, ca, mb, cb))
        return out

    def _dual_action_mono(self, pos: Monomial, cpos: FieldElement,
                          dual: Monomial, cdual: FieldElement) -> Element:
        f = [a + b for a, b in zip(pos.exponents, dual.exponents)]
        for i in self.dualizable:
            if f[i] > 0:
                return {}
        # sigma = coefficient of the old shadow in pos * (new shadow)
        v_old = Monomial(tuple(-dual.exponents[i] if i in self.dualizable else 0
                               for i in range(len(f))))
        v_new = Monomial(tuple(-f[i] if i in self.dualizable else 0
                               for i in range(len(f))))
        core = Monomial(tuple(pos.exponents[i] if i in self.dualizable else 0
                              for i in range(len(f))))
        prod = self.normal_form({core * v_new: self.ground.one()})
        sigma = prod.get(v_old)
        if sigma is None:
            return {}
        coeff = cpos * cdual * sigma
        if coeff.is_zero():
            return {}
        return {Monomial(tuple(f), dual=True): coeff}

    def dual_action(self, pos: Element, neg: Element) -> Element:
        out: Element = {}
        for mp, cp in pos.items():
            if mp.dual:
                raise AlgebraError("dual_action: left factor must be positive")
            for md, cd in neg.items():
                if not md.dual:
                    raise AlgebraError("dual_action: right factor must be dual")
                out = element_add(out, self._dual_action_mono(mp, cp, md, cd))
        return out

    # -- rewriting --------------------------------------------------------------

    def _divides(self, lead: Monomial, m: Monomial) -> bool:
        if m.dual:
            return False
        return all(m.exponents[i] >= e
                   for i, e in enumerate(lead.exponents) if e > 0)

    def _rewrite_term(self, m: Monomial, c: FieldElement, rule) -> Element:
        lead, repl = rule
        q = Monomial(tuple(me - le for me, le in zip(m.exponents, lead.exponents)))
        s_factor = self._koszul_sign(lead, q)
        out: Element = {}
        for rm, rc in repl.items():
            coeff = c * rc
            if s_factor * self._koszul_sign(rm, q) == -1:
                coeff = -coeff
            if not coeff.is_zero():
                out = element_add(out, {rm * q: coeff})
        return out

    def normal_form(self, e: Element) -> Element:
        work = {m: c for m, c in e.items() if not c.is_zero()}
        while True:
            target = None
            for m in self.sorted_monomials(work):
                if m.dual:
                    continue
                for rule in self.rules:
                    if self._divides(rule[0], m):
                        target = (m, rule)
                        break
                if target:
                    break
            if target is None:
                return work
            m, rule = target
            c = work.pop(m)
            work = element_add(work, self._rewrite_term(m, c, rule))

    def is_normal(self, m: Monomial) -> bool:
        return m.dual or not any(self._divides(r[0], m) for r in self.rules)

    # -- validation ---------------------------------------------------------------

    def _validate(self):
        for lead, repl in self.rules:
            if lead.dual:
                raise AlgebraError("rule lead cannot be dual")
            for i, e in enumerate(lead.exponents):
                if e and self.generators[i].invertible:
                    raise AlgebraError("rule lead touches an invertible generator")
                if e < 0:
                    raise AlgebraError("rule lead with negative exponent")
            dl = self.degree(lead)
            for rm in repl:
                if self.degree(rm) != dl:
                    raise AlgebraError(f"{self.name}: inhomogeneous rule at {dl}")
                if not rm.exponents < lead.exponents:
                    raise AlgebraError(f"{self.name}: rule does not decrease graded-lex")
        self._check_confluence()

    def _check_confluence(self):
        """Local confluence on all overlapping pairs of rule leads."""
        one = self.ground.one()
        n = len(self.rules)
        for i in range(n):
            for j in range(i + 1, n):
                lead_i = self.rules[i][0]
                lead_j = self.rules[j][0]
                overlap = Monomial(tuple(max(a, b) for a, b in
                                         zip(lead_i.exponents, lead_j.exponents)))
                via_i = self.normal_form(self._rewrite_term(overlap, one, self.rules[i]))
                via_j = self.normal_form(self._rewrite_term(overlap, one, self.rules[j]))
                if via_i != via_j:
                    raise AlgebraError(
                        f"{self.name}: rules {i} and {j} are not locally confluent")

    # -- localization -----------------------------------------------------------------

    def invert_generator(self, name: str) -> RingPresentation:
        i = self.index[name]
        g = self.generators[i]
        if g.parity == "odd":
            raise AlgebraError(f"cannot invert exterior generator {name}")
        if g.invertible:
            return self
        for lead, _ in self.rules:
            if lead.exponents[i]:
                raise AlgebraError(f"{name} is not regular: a rule rewrites its powers")
        gens = list(self.generators)
        gens[i] = replace(g, invertible=True)
        return RingPresentation(
            f"{self.name}[{name}^-1]", self.ground, gens, list(self.rules),
            dualizable=[self.generators[k].name for k in self.dualizable],
            dual_offset=self.dual_offset, check=False)

    # -- basis enumeration ---------------------------------------------------------------

    def _power_bound(self, i: int) -> int | None:
        """Exponent cap on generator i from a pure-power rule lead."""
        best = None
        for lead, _ in self.rules:
            exps = lead.exponents
            if exps[i] > 0 and all(e == 0 for j, e in enumerate(exps) if j != i):
                cap = exps[i] - 1
                best = cap if best is None else min(best, cap)
        return best

    def _axis_gens(self, axis: int) -> list[int]:
        out = []
        for i, g in enumerate(self.generators):
            if g.degree[axis] != 0:
                if g.degree[1 - axis] != 0:
                    raise AlgebraError(f"{g.name} mixes grading axes")
                out.append(i)
        return out

    def _enumerate_axis(self, axis: int, want: int) -> list[list[tuple[int, int]]]:
        """All exponent assignments on one grading axis with degree sum `want`."""
        gens = self._axis_gens(axis)
        bounded = [i for i in gens if not self.generators[i].invertible]
        invertible = [i for i in gens if self.generators[i].invertible]
        if len(invertible) > 1:
            raise AlgebraError("at most one invertible generator per axis")
        results: list[list[tuple[int, int]]] = []

        def rec(pos: int, remaining: int, acc):
            if pos == len(bounded):
                if invertible:
                    i = invertible[0]
                    d = self.generators[i].degree[axis]
                    if remaining % d == 0:
                        results.append(acc + [(i, remaining // d)])
                elif remaining == 0:
                    results.append(list(acc))
                return
            i = bounded[pos]
            d = self.generators[i].degree[axis]
            cap = self._power_bound(i)
            if cap is None:
                if invertible:
                    raise AlgebraError(
                        f"unbounded generator {self.generators[i].name} "
                        "alongside an invertible one")
                if remaining != 0 and (d > 0) == (remaining > 0):
                    cap = remaining // d
                else:
                    cap = 0
                cap = max(cap, 0)
            for e in range(cap + 1):
                rec(pos + 1, remaining - e * d, acc + [(i, e)])

        rec(0, want, [])
        return results

    def basis(self, bidegree: Bidegree) -> list[Monomial]:
        """Normal-form monomials at a bidegree, graded-lex descending.

        Dual classes (when the ring has a dual part) are listed after the
        positive ones; their shadow monomial must itself be in normal form.
        """
        s, t = bidegree
        positives = []
        for s_part in self._enumerate_axis(0, s):
            for t_part in self._enumerate_axis(1, t):
                vec = [0] * len(self.generators)
                for i, e in s_part + t_part:
                    vec[i] = e
                m = Monomial(tuple(vec))
                if self.is_normal(m):
                    positives.append(m)
        duals = []
        if self.dualizable:
            shadow_s = self.dual_offset[0] - s
            if shadow_s >= 0:
                for s_part in self._enumerate_axis(0, shadow_s):
                    if any(e and i not in self.dualizable for i, e in s_part):
                        continue
                    for t_part in self._enumerate_axis(1, t - self.dual_offset[1]):
                        if any(e and not self.generators[i].invertible
                               for i, e in t_part):
                            continue
                        vec = [0] * len(self.generators)
                        for i, e in s_part:
                            vec[i] = -e
                        for i, e in t_part:
                            vec[i] = e
                        shadow = Monomial(tuple(-v if i in self.dualizable else 0
                                                for i, v in enumerate(vec)))
                        if self.is_normal(shadow):
                            duals.append(Monomial(tuple(vec), dual=True))
        return self.sorted_monomials(positives) + self.sorted_monomials(duals)

    # -- printing and serialization --------------------------------------------------

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for e, g in zip(m.exponents, self.generators):
            if e == 0:
                continue
            parts.append(g.name if e == 1 else f"{g.name}^{e}")
        body = "*".join(parts)
        if m.dual:
            return f"alpha*{body}" if body else "alpha"
        return body or "1"

    def element_str(self, e: Element) -> str:
        if not e:
            return "0"
        parts = []
        for m in self.sorted_monomials(e):
            c = e[m]
            cs, ms = str(c), self.monomial_str(m)
            if cs == "1":
                parts.append(ms)
            elif ms == "1":
                parts.append(cs)
            else:
                parts.append(f"({cs})*{ms}")
        return " + ".join(parts)

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text == "1":
            return self.monomial()
        dual = False
        exps: dict[str, int] = {}
        for factor in text.split("*"):
            factor = factor.strip()
            if factor in ("1", ""):
                continue
            if factor == "alpha":
                dual = True
                continue
            if "^" in factor:
                name, e = factor.split("^", 1)
                exps[name] = exps.get(name, 0) + int(e)
            else:
                exps[factor] = exps.get(factor, 0) + 1
        return self.monomial(exps, dual=dual)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ground": {"p": self.ground.p, "m": self.ground.m},
            "generators": [
                {"name": g.name, "degree": list(g.degree), "parity": g.parity,
                 "invertible": g.invertible}
                for g in self.generators
            ],
            "rules": [
                {
                    "lead": self.monomial_str(lead),
                    "replacement": [
                        [self.monomial_str(m), str(c)]
                        for m, c in sorted(repl.items(),
                                           key=lambda kv: kv[0].exponents,
                                           reverse=True)
                    ],
                }
                for lead, repl in self.rules
            ],
            "dualizable": [self.generators[i].name for i in self.dualizable],
            "dual_offset": list(self.dual_offset),
        }

    @classmethod
    def from_json(cls, data: dict) -> RingPresentation:
        ground = FieldDescriptor(data["ground"]["p"], data["ground"]["m"])
        gens = [GeneratorSpec(g["name"], tuple(g["degree"]), g["parity"],
                              g["invertible"]) for g in data["generators"]]
        proto = cls(data["name"], ground, gens, (), check=False)
        rules = []
        for r in data["rules"]:
            lead = proto.parse_monomial(r["lead"])
            repl = {proto.parse_monomial(ms): parse_field_element(ground, cs)
                    for ms, cs in r["replacement"]}
            rules.append((lead, repl))
        return cls(data["name"], ground, gens, rules,
                   dualizable=data.get("dualizable", ()),
                   dual_offset=tuple(data.get("dual_offset", (-1, 0))))


def parse_field_element(ground: FieldDescriptor, text: str) -> FieldElement:
    """Inverse of FieldElement.__str__ ("w^2+2*w+1" style)."""
    acc = ground.zero()
    for term in text.strip().split("+"):
        term = term.strip()
        if term == "0":
            continue
        if "w" not in term:
            acc = acc + ground.one().scale(int(term))
            continue
        if "*" in term:
            cs, ws = term.split("*", 1)
            c = int(cs)
        else:
            ws, c = term, 1
        e = int(ws.split("^")[1]) if "^" in ws else 1
        acc = acc + (ground.gen() ** e).scale(c)
    return acc


@dataclass(frozen=True)
class TateRing:
    """Tate cohomology ring: positive presentation plus optional dual part.

    Periodic families (cyclic, quaternion) carry the periodicity class
    inverted inside `positive` and need no dual part.  Rank >= 2 families
    ((C_p)^n, dihedral) keep the cohomology ring as positive part and model
    negative degrees by its dual classes, with alpha in degree -1; products
    of two negative classes vanish and the cup product pairs complementary
    degrees perfectly onto <alpha>.
    """

    positive: RingPresentation

    @property
    def has_dual(self) -> bool:
        return bool(self.positive.dualizable)

    @property
    def ground(self) -> FieldDescriptor:
        return self.positive.ground

    def basis(self, bidegree) -> list[Monomial]:
        if isinstance(bidegree, int):
            bidegree = (bidegree, 0)
        return self.positive.basis(bidegree)

    def multiply(self, a: Element, b: Element) -> Element:
        return self.positive.multiply(a, b)

    def dual_action(self, pos: Element, neg: Element) -> Element:
        return self.positive.dual_action(pos, neg)

    def normal_form(self, e: Element) -> Element:
        return self.positive.normal_form(e)

    def monomial_str(self, m: Monomial) -> str:
        return self.positive.monomial_str(m)

    def pairing_matrix(self, r: int) -> list[list[FieldElement]]:
        """Cup-product pairing basis(r) x basis(-r-1) -> <alpha>."""
        if not self.has_dual:
            raise AlgebraError("pairing matrix needs a dual part")
        pos = self.basis(r)
        neg = self.basis(-r - 1)
        alpha = self.positive.monomial(dual=True)
        one = self.ground.one()
        zero = self.ground.zero()
        return [[self.positive.multiply_monomials(mp, one, mn, one).get(alpha, zero)
                 for mp in pos] for mn in neg]


# Spec-surface conveniences -------------------------------------------------------

def normal_form(e: Element, ring: RingPresentation) -> Element:
    return ring.normal_form(e)


def multiply(a: Element, b: Element, ring: RingPresentation) -> Element:
    return ring.multiply(a, b)


def invert_generator(ring: RingPresentation, name: str) -> RingPresentation:
    return ring.invert_generator(name)


def basis(ring, bidegree) -> list[Monomial]:
    if isinstance(ring, TateRing):
        return ring.basis(bidegree)
    if isinstance(bidegree, int):
        bidegree = (bidegree, 0)
    return ring.basis(bidegree)


def dual_action(pos: Element, neg: Element, tate: TateRing) -> Element:
    return tate.dual_action(pos, neg)
