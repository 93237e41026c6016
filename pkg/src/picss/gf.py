"""Exact arithmetic in finite fields GF(p^m).

Elements are coordinate vectors over F_p with respect to a fixed monic
irreducible polynomial per (p, m).  The modulus table is frozen so that
element encodings (and everything downstream: bases, matrices, charts)
are reproducible bit for bit.  Cross-field operations raise rather than
coerce; nothing here ever embeds one field into another silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

SUPPORTED_PRIMES = (2, 3, 5, 7)
MAX_DEGREE = 16


class FieldError(ValueError):
    """Bad field descriptor, cross-field operation, or division by zero."""


# Lexicographically smallest monic irreducible of degree m over F_p
# (coefficients low degree first, leading 1 included).  Regenerate with
# scripts/regen_modulus_table.py; tests re-verify irreducibility.
_IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (2, 6): (1, 0, 0, 0, 0, 1, 1),
    (2, 7): (1, 0, 0, 0, 0, 0, 1, 1),
    (2, 8): (1, 0, 0, 0, 1, 1, 0, 1, 1),
    (2, 9): (1, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (2, 10): (1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (2, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (2, 12): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1),
    (2, 13): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1),
    (2, 14): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1),
    (2, 16): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 0, 1, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (1, 0, 0, 0, 1, 1, 1),
    (3, 7): (1, 0, 0, 0, 0, 1, 2, 1),
    (3, 8): (1, 0, 0, 0, 0, 1, 1, 0, 1),
    (3, 9): (1, 0, 0, 0, 0, 0, 2, 1, 0, 1),
    (3, 10): (1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1),
    (3, 11): (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1),
    (3, 12): (1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1),
    (3, 13): (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1),
    (3, 14): None,
    (3, 15): None,
    (3, 16): None,
    (5, 2): None,
    (5, 3): None,
    (5, 4): None,
    (5, 5): None,
    (5, 6): None,
    (5, 7): None,
    (5, 8): None,
    (5, 9): None,
    (5, 10): None,
    (5, 11): None,
    (5, 12): None,
    (5, 13): None,
    (5, 14): None,
    (5, 15): None,
    (5, 16): None,
    (7, 2): None,
    (7, 3): None,
    (7, 4): None,
    (7, 5): None,
    (7, 6): None,
    (7, 7): None,
    (7, 8): None,
    (7, 9): None,
    (7, 10): None,
    (7, 11): None,
    (7, 12): None,
    (7, 13): None,
    (7, 14): None,
    (7, 15): None,
    (7, 16): None,
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class FieldDescriptor:
    """The field GF(p^m), p prime, 1 <= m <= 16."""

    p: int
    m: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.p not in SUPPORTED_PRIMES:
            raise FieldError(f"no modulus table for p = {self.p}")
        if not 1 <= self.m <= MAX_DEGREE:
            raise FieldError(f"extension degree {self.m} out of range 1..{MAX_DEGREE}")
        if self.m > 1 and _IRREDUCIBLE.get((self.p, self.m)) is None:
            raise FieldError(f"no modulus tabled for GF({self.p}^{self.m})")

    @property
    def order(self) -> int:
        return self.p ** self.m

    def modulus(self) -> tuple[int, ...]:
        """Coefficients (low first) of the fixed irreducible polynomial."""
        if self.m == 1:
            return (0, 1)
        return _IRREDUCIBLE[(self.p, self.m)]

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.m)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.m - 1))

    def gen(self) -> FieldElement:
        """The residue class w of the polynomial variable (= 1 if m = 1)."""
        if self.m == 1:
            return self.one()
        return FieldElement(self, (0, 1) + (0,) * (self.m - 2))

    def element(self, coeffs) -> FieldElement:
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.m:
            raise FieldError(f"need {self.m} coordinates, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def from_int(self, n: int) -> FieldElement:
        """Base-p digits of n as coordinates (enumeration order)."""
        digits = []
        for _ in range(self.m):
            digits.append(n % self.p)
            n //= self.p
        return FieldElement(self, tuple(digits))

    def elements(self):
        for coeffs in product(range(self.p), repeat=self.m):
            yield FieldElement(self, coeffs)

    def __str__(self):
        return f"GF({self.order})"


def parse_field(text: str) -> FieldDescriptor:
    """Parse "GF(q)" or "GF(p^m)" into a descriptor."""
    s = text.strip().replace(" ", "")
    if not (s.upper().startswith("GF(") and s.endswith(")")):
        raise FieldError(f"cannot parse field {text!r}")
    body = s[3:-1]
    if "^" in body:
        ps, ms = body.split("^", 1)
        p, m = int(ps), int(ms)
    else:
        q = int(body)
        p = None
        for cand in SUPPORTED_PRIMES:
            if q >= cand and q % cand == 0:
                p = cand
                break
        if p is None:
            raise FieldError(f"order {q} is not a tabled prime power")
        m = 0
        n = q
        while n % p == 0:
            n //= p
            m += 1
        if n != 1:
            raise FieldError(f"order {q} is not a prime power")
    return FieldDescriptor(p, m)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^m) as a coordinate vector mod the fixed modulus."""

    field: FieldDescriptor
    coeffs: tuple[int, ...]

    def _check(self, other: FieldElement):
        if self.field != other.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        p = self.field.p
        return FieldElement(
            self.field,
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        p, m = self.field.p, self.field.m
        if m == 1:
            return FieldElement(self.field, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod_coeffs = [0] * (2 * m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod_coeffs[i + j] = (prod_coeffs[i + j] + a * b) % p
        mod = self.field.modulus()
        for k in range(2 * m - 2, m - 1, -1):
            lead = prod_coeffs[k]
            if lead:
                prod_coeffs[k] = 0
                shift = k - m
                for i in range(m):
                    prod_coeffs[shift + i] = (prod_coeffs[shift + i] - lead * mod[i]) % p
        return FieldElement(self.field, tuple(prod_coeffs[:m]))

    def scale(self, n: int) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, tuple((n * a) % p for a in self.coeffs))

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> FieldElement:
        if self.is_zero():
            raise FieldError("inversion of zero")
        # |k^x| = p^m - 1, so a^(p^m - 2) = a^-1
        return self ** (self.field.order - 2)

    def frobenius(self, e: int = 1) -> FieldElement:
        """a^(p^e); the identity for e ≡ 0 mod m."""
        if e < 0:
            raise FieldError("frobenius exponent must be nonnegative")
        return self ** pow(self.field.p, e % self.field.m, self.field.order - 1) \
            if not self.is_zero() else self

    def to_int(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.field.p + c
        return n

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.field.m - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "w" if i == 1 else f"w^{i}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return "+".join(parts)

    def __repr__(self):
        return f"<{self} in {self.field}>"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def frobenius(a: FieldElement, e: int) -> FieldElement:
    return a.frobenius(e)


def has_primitive_cube_root(field: FieldDescriptor) -> bool:
    """True iff k^x contains an element of order 3, i.e. 3 | p^m - 1."""
    return (field.order - 1) % 3 == 0


def artin_schreier_roots(c: FieldElement) -> set[FieldElement]:
    """All roots of x^2 + x + c in GF(2^m); empty or a pair {r, r+1}.

    x -> x^2 + x is F_2-linear, so this is a linear solve in the
    coordinate basis rather than a field scan.
    """
    field = c.field
    if field.p != 2:
        raise FieldError("Artin-Schreier roots require characteristic 2")
    m = field.m
    # columns: (b^2 + b) for basis vectors b = w^i
    cols = []
    for i in range(m):
        b = field.element(tuple(1 if j == i else 0 for j in range(m)))
        cols.append((b * b + b).coeffs)
    # solve M x = c over F_2 by elimination on the augmented matrix
    rows = [[cols[j][i] for j in range(m)] + [c.coeffs[i]] for i in range(m)]
    pivots = []
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(m):
            if i != r and rows[i][col]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if rows[i][m]:
            return set()
    sol = [0] * m
    for i, col in enumerate(pivots):
        sol[col] = rows[i][m]
    root = field.element(tuple(sol))
    if not (root * root + root == c):
        return set()
    return {root, root + field.one()}


class FieldOps:
    """Table-driven arithmetic on int-encoded elements of a small field.

    Elements are encoded by FieldElement.to_int(); 0 and 1 encode the zero
    and one of the field.  Used by the spectral-sequence linear algebra,
    where object churn on FieldElement would dominate.
    """

    MAX_ORDER = 4096

    def __init__(self, field: FieldDescriptor):
        if field.order > self.MAX_ORDER:
            raise FieldError(f"operation tables capped at {self.MAX_ORDER}")
        self.field = field
        self.q = field.order
        self.elements = [field.from_int(i) for i in range(self.q)]
        index = {e.coeffs: i for i, e in enumerate(self.elements)}
        self.add = [[index[(a + b).coeffs] for b in self.elements]
                    for a in self.elements]
        self.mul = [[index[(a * b).coeffs] for b in self.elements]
                    for a in self.elements]
        self.neg = [index[(-a).coeffs] for a in self.elements]
        self.inv = [0] + [index[self.elements[i].inv().coeffs]
                          for i in range(1, self.q)]

    def encode(self, e: FieldElement) -> int:
        return e.to_int()

    def decode(self, i: int) -> FieldElement:
        return self.elements[i]

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]


@lru_cache(maxsize=None)
def field_ops(descriptor: FieldDescriptor) -> FieldOps:
    return FieldOps(descriptor)


@lru_cache(maxsize=None)
def field(p: int, m: int) -> FieldDescriptor:
    return FieldDescriptor(p, m)


GF2 = field(2, 1)
