"""Finite fields GF(p^k) in polynomial-basis representation.

Elements are coefficient vectors over Z_p (index i holds the coefficient of
x^i) reduced modulo a monic irreducible polynomial of degree k.  Every element
carries a canonical integer index, sum(coeffs[i] * p^i), and enumerating
indices 0 .. p^k-1 is the canonical element order used throughout the package
wherever designs or frames need a stable point ordering.

The modulus is the first monic irreducible polynomial of degree k in canonical
order, and the primitive element is the first field element that generates the
multiplicative group, so construction is fully deterministic: repeated calls
to make_field agree, across runs and machines.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NonPrimeCharacteristic, NotADivisor, NotASubfield, SizeLimitExceeded

SIZE_LIMIT = 2 ** 20  # fields above this are out of scope (keeps exhaustive checks cheap)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n == p**e and p prime, or None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)  # n itself is prime
        if n % p:
            continue
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        return (p, e) if m == 1 else None
    return None


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial arithmetic over Z_p (tuples, low-to-high, not trimmed) -------

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mod(a, b, p):
    """Remainder of a modulo the monic-leading polynomial b, over Z_p."""
    a = list(a)
    db = len(_poly_trim(b)) - 1
    lead_inv = pow(b[db], p - 2, p) if b[db] != 1 else 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c == 0:
            continue
        factor = (c * lead_inv) % p
        for j_, bj in enumerate(b[: db + 1]):
            a[i - db + j_] = (a[i - db + j_] - factor * bj) % p
    return tuple(c % p for c in a[:db])


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j_, bj in enumerate(b):
            out[i + j_] = (out[i + j_] + ai * bj) % p
    return tuple(out)


def _monic_polys(degree: int, p: int):
    """All monic polynomials of the given degree, in canonical index order."""
    for idx in range(p ** degree):
        coeffs = []
        m = idx
        for _ in range(degree):
            coeffs.append(m % p)
            m //= p
        yield tuple(coeffs) + (1,)


def _is_irreducible(poly, p: int) -> bool:
    """Trial division against every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not any(_poly_mod(poly, g, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k): coefficient vector plus owning field."""

    coeffs: tuple[int, ...]
    field: "FiniteField"

    @property
    def index(self) -> int:
        """Canonical integer index: base-p encoding of the coefficient vector."""
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * self.field.p + c
        return idx

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        prod = _poly_mul(self.coeffs, other.coeffs, f.p)
        red = _poly_mod(prod, f.modulus, f.p)
        return FieldElement(red + (0,) * (f.k - len(red)), f)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "FieldElement":
        if self == self.field.zero:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self ** (self.field.order - 2)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check(self, other: "FieldElement") -> None:
        if self.field is not other.field:
            raise ValueError("elements belong to different fields")

    def __repr__(self) -> str:
        return f"GF({self.field.order}).element({self.index})"


@dataclass(frozen=True)
class FiniteField:
    """GF(p^k) with a deterministic modulus and primitive element.

    modulus is a monic irreducible polynomial of degree k, stored low-to-high
    (length k+1); primitive_index is the canonical index of the first element
    of multiplicative order p^k - 1.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    primitive_index: int

    @property
    def order(self) -> int:
        return self.p ** self.k

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.k, self)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    @property
    def primitive(self) -> FieldElement:
        return self.element(self.primitive_index)

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} out of range for GF({self.order})")
        coeffs = []
        for _ in range(self.k):
            coeffs.append(index % self.p)
            index //= self.p
        return FieldElement(tuple(coeffs), self)

    def elements(self):
        """All field elements in canonical index order."""
        return (self.element(i) for i in range(self.order))

    def from_int(self, value: int) -> FieldElement:
        """The prime-field constant value mod p, embedded as a constant polynomial."""
        return self.element(value % self.p)

    def element_order(self, x: FieldElement) -> int:
        if x.is_zero():
            raise ValueError("zero is not in the multiplicative group")
        n = 1
        y = x
        while y != self.one:
            y = y * x
            n += 1
        return n

    def subfield_elements(self, sub_degree: int) -> list[FieldElement]:
        """Elements of the subfield GF(p^sub_degree): fixed points of x -> x^(p^d)."""
        if self.k % sub_degree:
            raise NotADivisor(f"sub_degree {sub_degree} does not divide {self.k}")
        q = self.p ** sub_degree
        return [x for x in self.elements() if x ** q == x]


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FiniteField:
    """Construct GF(p^k) deterministically.

    The modulus is the first monic irreducible degree-k polynomial in canonical
    order and the primitive element is the first generator in canonical element
    order, so repeated calls (and independent runs) agree.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise SizeLimitExceeded(f"extension degree must be >= 1, got {k}")
    if p ** k > SIZE_LIMIT:
        raise SizeLimitExceeded(f"p^k = {p ** k} exceeds the size guard {SIZE_LIMIT}")

    modulus = None
    for cand in _monic_polys(k, p):
        if _is_irreducible(cand, p):
            modulus = cand
            break
    assert modulus is not None  # an irreducible polynomial of every degree exists

    field = FiniteField(p=p, k=k, modulus=modulus, primitive_index=1)
    group_order = p ** k - 1
    factors = _prime_factors(group_order) if group_order > 1 else []
    prim = None
    for i in range(1, p ** k):
        x = field.element(i)
        if all((x ** (group_order // f)) != field.one for f in factors):
            prim = i
            break
    assert prim is not None
    return FiniteField(p=p, k=k, modulus=modulus, primitive_index=prim)


def trace(x: FieldElement, sub_degree: int = 1) -> FieldElement:
    """Field trace of x from GF(p^k) onto GF(p^sub_degree).

    tr(x) = sum of x^(q^i) for i = 0 .. k/d - 1 with q = p^d: the sum of the
    automorphisms fixing the subfield.  The result is a field element lying in
    the subfield (it is fixed by the q-power Frobenius).
    """
    f = x.field
    if f.k % sub_degree:
        raise NotADivisor(f"sub_degree {sub_degree} does not divide {f.k}")
    q = f.p ** sub_degree
    acc = x
    y = x
    for _ in range(f.k // sub_degree - 1):
        y = y ** q
        acc = acc + y
    return acc


def relative_trace(x: FieldElement, upper_degree: int, lower_degree: int) -> FieldElement:
    """Trace from the degree-upper subfield onto the degree-lower subfield.

    Only meaningful when x actually lies in the degree-upper subfield; the
    caller is responsible for that (the composition law tests rely on it).
    """
    f = x.field
    if upper_degree % lower_degree or f.k % upper_degree:
        raise NotADivisor("subfield degrees must form a divisor chain")
    q = f.p ** lower_degree
    acc = x
    y = x
    for _ in range(upper_degree // lower_degree - 1):
        y = y ** q
        acc = acc + y
    return acc


def _subfield_degree(field: FiniteField, q: int) -> int:
    pp = prime_power(q)
    if pp is None or pp[0] != field.p:
        raise NotASubfield(f"{q} is not a power of the characteristic {field.p}")
    d = pp[1]
    if field.k % d:
        raise NotASubfield(f"GF({q}) is not a subfield of GF({field.order})")
    return d


def hyperplane_kernel(field: FiniteField, q: int) -> list[FieldElement]:
    """The trace-zero hyperplane {v : tr(v) = 0} of GF(q^(j+1)) over GF(q).

    Returns exactly q^j elements in canonical order; the set is closed under
    addition and under multiplication by GF(q) scalars.
    """
    d = _subfield_degree(field, q)
    zero = field.zero
    return [x for x in field.elements() if trace(x, d) == zero]


def trace_one_element(field: FiniteField, q: int) -> FieldElement:
    """First element delta in canonical order with tr(delta) = 1 over GF(q).

    Every field element then decomposes uniquely as s + t*delta with s in the
    trace-zero hyperplane and t in GF(q).
    """
    d = _subfield_degree(field, q)
    one = field.one
    for x in field.elements():
        if trace(x, d) == one:
            return x
    raise AssertionError("nontrivial linear functional attains 1")  # unreachable
