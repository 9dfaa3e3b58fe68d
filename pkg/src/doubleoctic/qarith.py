"""Exact arithmetic in prime fields, quadratic extension towers, and the
integer rings of Q(sqrt d) for d in {2, 5, -3}.

Field elements are canonical integer indices: value in [0, p) for F_p, and
a*q_base + b for the element a + b*t of a quadratic extension with t^2 a
fixed non-residue of the base.  All integer arithmetic stays well inside
64 bits for the prime ranges used here (p <= 131).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class QArithError(ValueError):
    pass


class InvalidModulusError(QArithError):
    pass


class NonIntegralError(QArithError):
    """Denominator not invertible modulo the prime."""


class RamifiedEntryError(QArithError):
    """Quadratic character requested at an element lying in the ideal."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, +1}."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidModulusError(f"modulus {p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod(a: int, p: int):
    """Smallest square root of a mod p, or None.  Linear scan; p is small here."""
    a %= p
    for y in range((p + 1) // 2 + 1):
        if y * y % p == a:
            return y
    return None


class PrimeField:
    """F_p with elements represented by their canonical value in [0, p)."""

    def __init__(self, p: int):
        if p < 3 or not is_prime(p):
            raise InvalidModulusError(f"{p} is not an odd prime")
        self.p = p
        self.q = p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, -1, self.p)

    def pow(self, x: int, e: int) -> int:
        return pow(x, e, self.p)

    def char(self, x: int) -> int:
        """Quadratic character: x^((q-1)/2) read in {-1, 0, +1}."""
        r = pow(x % self.p, (self.p - 1) // 2, self.p)
        return -1 if r == self.p - 1 else r

    def sqrt(self, x: int):
        return sqrt_mod(x, self.p)

    def nonresidue(self) -> int:
        for n in range(2, self.p):
            if self.char(n) == -1:
                return n
        raise InvalidModulusError(f"no non-residue mod {self.p}")

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class QuadExtField:
    """Quadratic extension base[t]/(t^2 - n), n the smallest non-residue of base.

    The element a + b*t gets index a*base.q + b, so base-field elements sit at
    indices divisible by base.q.
    """

    def __init__(self, base, n: int | None = None):
        self.base = base
        self.p = base.p
        self.n = base.nonresidue() if n is None else n
        if base.char(self.n) != -1:
            raise InvalidModulusError(f"{self.n} is a square in {base}")
        self.q = base.q * base.q

    def split(self, x: int) -> tuple[int, int]:
        return divmod(x, self.base.q)

    def join(self, a: int, b: int) -> int:
        return a * self.base.q + b

    def from_int(self, n: int) -> int:
        return self.join(self.base.from_int(n), 0)

    def from_base(self, a: int) -> int:
        return self.join(a, 0)

    def add(self, x: int, y: int) -> int:
        a1, b1 = self.split(x)
        a2, b2 = self.split(y)
        return self.join(self.base.add(a1, a2), self.base.add(b1, b2))

    def sub(self, x: int, y: int) -> int:
        a1, b1 = self.split(x)
        a2, b2 = self.split(y)
        return self.join(self.base.sub(a1, a2), self.base.sub(b1, b2))

    def neg(self, x: int) -> int:
        a, b = self.split(x)
        return self.join(self.base.neg(a), self.base.neg(b))

    def mul(self, x: int, y: int) -> int:
        a1, b1 = self.split(x)
        a2, b2 = self.split(y)
        bb = self.base
        a = bb.add(bb.mul(a1, a2), bb.mul(self.n, bb.mul(b1, b2)))
        b = bb.add(bb.mul(a1, b2), bb.mul(a2, b1))
        return self.join(a, b)

    def conj(self, x: int) -> int:
        a, b = self.split(x)
        return self.join(a, self.base.neg(b))

    def norm_to_base(self, x: int) -> int:
        a, b = self.split(x)
        bb = self.base
        return bb.sub(bb.mul(a, a), bb.mul(self.n, bb.mul(b, b)))

    def inv(self, x: int) -> int:
        nrm = self.norm_to_base(x)
        if nrm == 0:
            raise ZeroDivisionError("inverse of 0")
        inrm = self.base.inv(nrm)
        a, b = self.split(x)
        return self.join(self.base.mul(a, inrm), self.base.mul(self.base.neg(b), inrm))

    def pow(self, x: int, e: int) -> int:
        r = self.from_int(1)
        b = x
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def char(self, x: int) -> int:
        """chi(x) = chi_base(Norm(x)); agrees with x^((q-1)/2)."""
        if x == 0:
            return 0
        return self.base.char(self.norm_to_base(x))

    def sqrt(self, x: int):
        for y in range(self.q):
            if self.mul(y, y) == x:
                return y
        return None

    def nonresidue(self) -> int:
        for y in range(1, self.q):
            if self.char(y) == -1:
                return y
        raise InvalidModulusError("no non-residue")

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"F_{self.q}"

    def __eq__(self, other):
        return (
            isinstance(other, QuadExtField)
            and other.base == self.base
            and other.n == self.n
        )

    def __hash__(self):
        return hash(("Fq2", self.base, self.n))


@lru_cache(maxsize=None)
def GFp(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def GFp2(p: int) -> QuadExtField:
    return QuadExtField(GFp(p))


@lru_cache(maxsize=None)
def GFext(p: int, k: int):
    """F_{p^(2^k)} as an iterated tower of quadratic extensions."""
    if k == 0:
        return GFp(p)
    return QuadExtField(GFext(p, k - 1))


class QuadRing:
    """Ring of integers of Q(sqrt d), d squarefree.

    Integral basis {1, w} with w = sqrt d for d = 2, 3 mod 4 and
    w = (1 + sqrt d)/2 for d = 1 mod 4; elements are integer coordinate
    pairs over that basis.
    """

    def __init__(self, d: int):
        if d in (0, 1):
            raise ValueError(f"d={d} does not define a quadratic ring")
        self.d = d
        self.half_basis = d % 4 == 1
        # w^2 = w_lin * w + w_const
        if self.half_basis:
            self.w_lin, self.w_const = 1, (d - 1) // 4
        else:
            self.w_lin, self.w_const = 0, d

    def one(self) -> "QuadInt":
        return QuadInt(self, 1, 0)

    def sqrt_d(self) -> "QuadInt":
        if self.half_basis:
            return QuadInt(self, -1, 2)
        return QuadInt(self, 0, 1)

    def omega(self) -> "QuadInt":
        return QuadInt(self, 0, 1)

    def from_sqrt_coords(self, x, y) -> "QuadInt":
        """Element x + y*sqrt(d) with rational x, y; must be integral."""
        x, y = Fraction(x), Fraction(y)
        if self.half_basis:
            a, b = x - y, 2 * y
        else:
            a, b = x, y
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError(f"{x} + {y}*sqrt({self.d}) is not integral")
        return QuadInt(self, int(a), int(b))

    def __repr__(self):
        return f"O(Q(sqrt({self.d})))"

    def __eq__(self, other):
        return isinstance(other, QuadRing) and other.d == self.d

    def __hash__(self):
        return hash(("QuadRing", self.d))


@dataclass(frozen=True)
class QuadInt:
    """a + b*w over the integral basis of its ring."""

    ring: QuadRing
    a: int
    b: int

    def __add__(self, other):
        other = self._coerce(other)
        return QuadInt(self.ring, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadInt(self.ring, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QuadInt(self.ring, -self.a, -self.b)

    def __mul__(self, other):
        other = self._coerce(other)
        r = self.ring
        # (a1 + b1 w)(a2 + b2 w) with w^2 = w_lin w + w_const
        bb = self.b * other.b
        return QuadInt(
            r,
            self.a * other.a + bb * r.w_const,
            self.a * other.b + self.b * other.a + bb * r.w_lin,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other) -> "QuadInt":
        if isinstance(other, QuadInt):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        if isinstance(other, int):
            return QuadInt(self.ring, other, 0)
        return NotImplemented

    def conj(self) -> "QuadInt":
        r = self.ring
        if r.half_basis:
            return QuadInt(r, self.a + self.b, -self.b)
        return QuadInt(r, self.a, -self.b)

    def norm(self) -> int:
        c = self.conj()
        prod = self * c
        assert prod.b == 0
        return prod.a

    def trace(self) -> int:
        return 2 * self.a + (self.b if self.ring.half_basis else 0)

    def sqrt_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (x, y) with self = x + y*sqrt(d)."""
        if self.ring.half_basis:
            return Fraction(2 * self.a + self.b, 2), Fraction(self.b, 2)
        return Fraction(self.a), Fraction(self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self):
        x, y = self.sqrt_coords()
        d = self.ring.d
        sd = f"sqrt({d})"
        if y == 0:
            return str(x)
        if x == 0:
            return f"{y}*{sd}"
        return f"{x} {'+' if y > 0 else '-'} {abs(y)}*{sd}"


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime of a QuadRing, carried around with its residue data."""

    ring: QuadRing
    p: int
    kind: str  # split | inert | ramified
    generator: QuadInt
    norm: int
    res_degree: int

    def key(self):
        """Canonical ideal key: rational prime plus the residue image of w."""
        if self.kind == "split":
            return (self.p, reduce_mod(self.ring.omega(), self))
        if self.kind == "ramified":
            return (self.p, "r")
        return (self.p, "i")

    def residue_field(self):
        if self.kind == "inert":
            return GFp2(self.p)
        return GFp(self.p)

    def conjugate(self) -> "PrimeIdeal":
        if self.kind != "split":
            return self
        return PrimeIdeal(
            self.ring, self.p, self.kind,
            _normalize_gen(self.generator.conj()), self.norm, self.res_degree,
        )

    def __str__(self):
        if self.kind == "split":
            return f"({self.generator})"
        return f"({self.p})"


def _normalize_gen(g: QuadInt) -> QuadInt:
    """Sign-normalize a generator: sqrt(d)-coordinate >= 0, then a >= 0."""
    _, y = g.sqrt_coords()
    if y < 0 or (y == 0 and g.a < 0):
        return -g
    return g


def split_prime(ring: QuadRing, p: int) -> tuple[PrimeIdeal, ...]:
    """Primes of the ring above an odd rational prime p.

    Split primes come back as a conjugate pair; the first is the one whose
    normalized generator has the larger rational part.
    """
    if p == 2 or not is_prime(p):
        raise InvalidModulusError(f"p={p} must be an odd prime")
    d = ring.d
    if d % p == 0:
        return (PrimeIdeal(ring, p, "ramified", _normalize_gen(ring.sqrt_d()), p, 1),)
    sym = legendre(d, p)
    if sym == -1:
        return (PrimeIdeal(ring, p, "inert", QuadInt(ring, p, 0), p * p, 2),)
    # split: search a generator of norm +-p, smallest (b, |a|) first so the
    # representative is deterministic
    gen = None
    bound = p
    while gen is None:
        bound += p
        for b in range(1, bound):
            for aa in range(0, bound):
                for a in (aa, -aa) if aa else (0,):
                    cand = QuadInt(ring, a, b)
                    if abs(cand.norm()) == p:
                        gen = cand
                        break
                if gen is not None:
                    break
            if gen is not None:
                break
    g1 = _normalize_gen(gen)
    g2 = _normalize_gen(gen.conj())
    p1 = PrimeIdeal(ring, p, "split", g1, p, 1)
    p2 = PrimeIdeal(ring, p, "split", g2, p, 1)
    if g1.a < g2.a:
        p1, p2 = p2, p1
    return (p1, p2)


def primes_above(ring: QuadRing, p: int) -> tuple[PrimeIdeal, ...]:
    return split_prime(ring, p)


def prime_by_image(ring: QuadRing, p: int, elem: QuadInt, image: int) -> PrimeIdeal:
    """The prime above p at which elem reduces to the given residue value."""
    for P in split_prime(ring, p):
        if reduce_mod(elem, P) == image:
            return P
    raise QArithError(f"no prime above {p} sends {elem} to {image}")


def ideal_from_generator(ring: QuadRing, gen: QuadInt) -> PrimeIdeal:
    """PrimeIdeal described by a single generator of prime norm (or a prime p)."""
    n = abs(gen.norm())
    if gen.b == 0:
        p = abs(gen.a)
        P = split_prime(ring, p)
        if P[0].kind != "inert" and len(P) > 1:
            raise QArithError(f"{p} is not inert; a rational generator is ambiguous")
        return P[0]
    if not is_prime(n):
        raise QArithError(f"{gen} does not generate a prime ideal (norm {n})")
    for P in split_prime(ring, n):
        # gen lies in P iff gen reduces to 0
        if reduce_mod(gen, P) == 0:
            return P
    raise QArithError(f"could not locate the ideal of {gen}")


@lru_cache(maxsize=None)
def _omega_image(P: PrimeIdeal):
    """Index of the basis element w in the residue field of P."""
    p = P.p
    ring = P.ring
    if P.kind == "split":
        g = P.generator
        # a + b*w = 0 in the residue field; b is invertible mod p since the
        # generator is not rational.
        return (-g.a * pow(g.b % p, -1, p)) % p
    if P.kind == "ramified":
        # sqrt(d) = 0; w = (1 + sqrt(d))/2 when the basis is half-integral
        return pow(2, -1, p) if ring.half_basis else 0
    # inert: sqrt(d) = c*t with c^2 = d/n mod p
    fld = GFp2(p)
    c = sqrt_mod(ring.d * pow(fld.n, -1, p) % p, p)
    assert c is not None
    sd = fld.join(0, c)
    if ring.half_basis:
        return fld.mul(fld.add(fld.from_int(1), sd), fld.from_int(pow(2, -1, p)))
    return sd


def sqrt_d_image(P: PrimeIdeal):
    """Index of sqrt(d) in the residue field of P."""
    fld = P.residue_field()
    w = _omega_image(P)
    if P.ring.half_basis:
        return fld.sub(fld.add(w, w), fld.from_int(1))
    return w


def reduce_mod(alpha, P: PrimeIdeal):
    """Residue of alpha in O/P as a canonical field-element index.

    Accepts QuadInt, plain integers, Fractions with denominator prime to p,
    and (x, y) pairs of Fractions meaning x + y*sqrt(d).
    """
    fld = P.residue_field()
    p = P.p
    if isinstance(alpha, QuadInt):
        if alpha.ring != P.ring:
            raise QArithError("element and ideal from different rings")
        w = _omega_image(P)
        return fld.add(fld.from_int(alpha.a), fld.mul(fld.from_int(alpha.b), w))
    if isinstance(alpha, int):
        return fld.from_int(alpha)
    if isinstance(alpha, Fraction):
        if alpha.denominator % p == 0:
            raise NonIntegralError(f"{alpha} has denominator divisible by {p}")
        return fld.mul(fld.from_int(alpha.numerator),
                       fld.from_int(pow(alpha.denominator % p, -1, p)))
    if isinstance(alpha, tuple) and len(alpha) == 2:
        x, y = Fraction(alpha[0]), Fraction(alpha[1])
        xr = reduce_mod(x, P)
        yr = reduce_mod(y, P)
        return fld.add(xr, fld.mul(yr, sqrt_d_image(P)))
    raise TypeError(f"cannot reduce {alpha!r}")


def residue_quad_char(alpha, P: PrimeIdeal) -> int:
    """0 if alpha is a square in O/P, 1 if not; error if alpha lies in P."""
    r = reduce_mod(alpha, P)
    if r == 0:
        raise RamifiedEntryError(f"{alpha} vanishes mod {P}")
    return 0 if P.residue_field().char(r) == 1 else 1
