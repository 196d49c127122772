"""Arithmetic in GF(p^m) and the projective points of GF(q)^3.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients of the residue polynomial in ascending degree.  Comparing two
encodings is the same as comparing coefficient vectors highest degree first,
which is the order used for choosing moduli and numbering points.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

DEFAULT_Q_CAP = 2 ** 16
_TABLE_LIMIT = 512


class FieldError(ValueError):
    pass


def _smallest_prime_factor(q: int) -> int:
    f = 2
    while f * f <= q:
        if q % f == 0:
            return f
        f += 1
    return q


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` or None."""
    if q < 2:
        return None
    p = _smallest_prime_factor(q)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


# -- polynomials over GF(p), ascending coefficient tuples -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree in increasing encoding order."""
    for low in range(p ** degree):
        coeffs = [(low // p ** i) % p for i in range(degree)]
        yield coeffs + [1]


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Brute force: no monic divisor of degree 1..m//2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, m // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _poly_mod(list(modulus), cand, p):
                return False
    return True


@dataclass(frozen=True)
class Field:
    p: int
    m: int
    modulus: tuple[int, ...]  # ascending coefficients, monic, length m + 1

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.m, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}{mono}"))
        return "+".join(terms)

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p ** i) % self.p for i in range(self.m))

    def encode(self, coeffs) -> int:
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self.encode(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self.encode(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.encode(_poly_mod(prod, list(self.modulus), self.p))

    @cached_property
    def _mul_table(self) -> list[list[int]] | None:
        if self.q > _TABLE_LIMIT:
            return None
        return [[self._mul_raw(a, b) for b in range(self.q)] for a in range(self.q)]

    def mul(self, a: int, b: int) -> int:
        table = self._mul_table
        return table[a][b] if table is not None else self._mul_raw(a, b)

    def pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.pow(a, self.q - 2)

    def element(self, value) -> "FieldElement":
        if isinstance(value, (tuple, list)):
            value = self.encode(value)
        if not 0 <= value < self.q:
            raise FieldError(f"{value} is not an element encoding of {self!r}")
        return FieldElement(self, value)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, a) for a in range(self.q)]


def make_field(q: int, cap: int = DEFAULT_Q_CAP) -> Field:
    """GF(q) with the smallest monic irreducible modulus of degree m."""
    pm = prime_power(q)
    if pm is None:
        raise FieldError(f"{q} is not a prime power")
    if q > cap:
        raise FieldError(f"q={q} exceeds the configured cap {cap}")
    p, m = pm
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return Field(p, m, tuple(cand))
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _same(self, other: "FieldElement") -> None:
        if other.field != self.field:
            raise FieldError(f"mixing elements of {self.field!r} and {other.field!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


def field_arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Apply ``op`` in {'add', 'mul', 'neg', 'inv'}; unary ops ignore ``b``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class ProjectivePoint:
    """A 1-dimensional subspace of GF(q)^3 in canonical form.

    ``coords`` hold element encodings scaled so the first nonzero one is 1.
    """

    field: Field
    coords: tuple[int, int, int]

    @classmethod
    def from_vector(cls, field: Field, vec) -> "ProjectivePoint":
        vec = tuple(int(x) for x in vec)
        lead = next((x for x in vec if x), None)
        if lead is None:
            raise FieldError("the zero vector spans no subspace")
        scale = field.inv(lead)
        return cls(field, tuple(field.mul(scale, x) for x in vec))

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, x) for x in self.coords)

    def dot(self, other: "ProjectivePoint") -> int:
        f = self.field
        acc = 0
        for x, y in zip(self.coords, other.coords):
            acc = f.add(acc, f.mul(x, y))
        return acc


def projective_points(f: Field) -> list[ProjectivePoint]:
    """All ``q^2 + q + 1`` canonical points in lexicographic order."""
    q = f.q
    pts = [(0, 0, 1)]
    pts += [(0, 1, c) for c in range(q)]
    pts += [(1, b, c) for b, c in product(range(q), repeat=2)]
    return [ProjectivePoint(f, v) for v in sorted(pts)]


def orthogonal(a: ProjectivePoint, b: ProjectivePoint) -> bool:
    if a.field != b.field:
        raise FieldError("points belong to different fields")
    return a.dot(b) == 0
