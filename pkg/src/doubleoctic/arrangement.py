"""Octic plane arrangements: admissibility, singularity census, the square
class attached to a fourfold point, and the degree-two self-map of the
built-in arrangement X250.

All census combinatorics runs over exact field arithmetic in K = Q(sqrt d)
(elements are pairs of Fractions), never floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt

from .qarith import PrimeIdeal, QuadInt, QuadRing, reduce_mod


class ArrangementError(ValueError):
    pass


class MalformedArrangementError(ArrangementError):
    pass


class UnsupportedSingularityError(ArrangementError):
    pass


class IndeterminateError(ArrangementError):
    """Point maps into the indeterminacy locus of the self-map."""


# ---------------------------------------------------------------------------
# exact arithmetic in K = Q(sqrt d); d = 1 means plain Q


class QuadField:
    def __init__(self, d: int):
        self.d = d

    @property
    def is_rational(self) -> bool:
        return self.d == 1

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.d == self.d

    def __hash__(self):
        return hash(("QuadField", self.d))

    def __repr__(self):
        return "Q" if self.d == 1 else f"Q(sqrt({self.d}))"

    def el(self, x, y=0) -> "KElem":
        return KElem(self, Fraction(x), Fraction(y))

    def from_quadint(self, v: QuadInt) -> "KElem":
        x, y = v.sqrt_coords()
        return KElem(self, x, y)


@dataclass(frozen=True)
class KElem:
    """x + y*sqrt(d) with rational x, y."""

    fld: QuadField
    x: Fraction
    y: Fraction

    def __add__(self, o):
        o = self._c(o)
        return KElem(self.fld, self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        o = self._c(o)
        return KElem(self.fld, self.x - o.x, self.y - o.y)

    def __neg__(self):
        return KElem(self.fld, -self.x, -self.y)

    def __mul__(self, o):
        o = self._c(o)
        return KElem(
            self.fld,
            self.x * o.x + self.fld.d * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    def __truediv__(self, o):
        o = self._c(o)
        return self * o.inv()

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return self._c(o) - self

    def _c(self, o) -> "KElem":
        if isinstance(o, KElem):
            if o.fld != self.fld:
                raise ValueError("mixed fields")
            return o
        if isinstance(o, (int, Fraction)):
            return KElem(self.fld, Fraction(o), Fraction(0))
        return NotImplemented

    def conj(self) -> "KElem":
        return KElem(self.fld, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.fld.d * self.y * self.y

    def inv(self) -> "KElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in K")
        return KElem(self.fld, self.x / n, -self.y / n)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def reduce(self, P: PrimeIdeal) -> int:
        return reduce_mod((self.x, self.y), P)

    def reduce_rational(self, p: int) -> int:
        if self.y != 0:
            raise ValueError(f"{self} is irrational; reduction needs a prime ideal")
        if self.x.denominator % p == 0:
            raise ValueError(f"denominator of {self} not invertible mod {p}")
        return self.x.numerator * pow(self.x.denominator, -1, p) % p

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        s = f"{self.y}*sqrt({self.fld.d})"
        if self.x == 0:
            return s
        return f"{self.x}{'+' if self.y > 0 else ''}{s}"


def _frac_is_square(r: Fraction) -> bool:
    if r < 0:
        return False
    return isqrt(r.numerator) ** 2 == r.numerator and \
        isqrt(r.denominator) ** 2 == r.denominator


def is_square_in_k(v: KElem) -> bool:
    """Exact squareness test in Q(sqrt d)."""
    if v.is_zero():
        return True
    d = v.fld.d
    if v.y == 0:
        return _frac_is_square(v.x) or _frac_is_square(v.x / d)
    n = v.norm()  # = (x + y sqrt d)(x - y sqrt d)
    if not _frac_is_square(n):
        return False
    m = Fraction(isqrt(n.numerator), isqrt(n.denominator))
    # (s + t sqrt d)^2 = v gives s^2, d t^2 as the roots of X^2 - x X + d y^2/4
    for sgn in (1, -1):
        s2 = (v.x + sgn * m) / 2
        if s2 != 0 and _frac_is_square(s2):
            s = Fraction(isqrt(s2.numerator), isqrt(s2.denominator))
            t = v.y / (2 * s)
            if s * s + d * t * t == v.x:
                return True
    return False


@dataclass(frozen=True)
class SquareClass:
    """Element of K* modulo squares; equality is the exact ratio test."""

    rep: KElem

    def __post_init__(self):
        if self.rep.is_zero():
            raise ValueError("0 does not define a square class")

    def same_class(self, other: "SquareClass") -> bool:
        return is_square_in_k(self.rep * other.rep.inv())

    def __eq__(self, other):
        return isinstance(other, SquareClass) and self.same_class(other)

    def __hash__(self):
        # only the trivial invariants; fine for small sets with eq fallback
        return hash(self.rep.fld)

    def reduce(self, P: PrimeIdeal) -> int:
        return self.rep.reduce(P)

    def chi(self, P: PrimeIdeal) -> int:
        """Quadratic character of the class in the residue field of P."""
        return P.residue_field().char(self.rep.reduce(P))

    def __str__(self):
        return str(self.rep)


# ---------------------------------------------------------------------------
# linear forms and arrangements


@dataclass(frozen=True)
class LinearForm:
    """A linear form in (x, y, z, v) with coefficients in K."""

    coeffs: tuple[KElem, KElem, KElem, KElem]

    def __post_init__(self):
        if all(c.is_zero() for c in self.coeffs):
            raise MalformedArrangementError("zero linear form")

    def plane_key(self):
        """Scale-normalized coefficient tuple; equal iff same plane."""
        lead = next(c for c in self.coeffs if not c.is_zero())
        inv = lead.inv()
        return tuple((c * inv).x for c in self.coeffs) + \
            tuple((c * inv).y for c in self.coeffs)

    def eval(self, pt) -> KElem:
        acc = None
        for c, t in zip(self.coeffs, pt):
            term = c * t
            acc = term if acc is None else acc + term
        return acc

    def __str__(self):
        names = "xyzv"
        parts = []
        for c, n in zip(self.coeffs, names):
            if not c.is_zero():
                parts.append(f"({c}){n}")
        return " + ".join(parts)


@dataclass(frozen=True)
class FourfoldPoint:
    point: tuple[KElem, KElem, KElem, KElem]
    incident: tuple[int, ...]      # indices of the four planes through it
    generic_cone: bool             # any three of the four forms independent


@dataclass
class Census:
    double_lines: int
    triple_lines: int
    fourfold_points: list[FourfoldPoint]
    higher_points: list[tuple[tuple, tuple[int, ...]]]
    line_planes: list[tuple[int, ...]] = field(default_factory=list)

    def summary(self) -> str:
        return (f"{self.double_lines} double lines, {self.triple_lines} triple "
                f"lines, {len(self.fourfold_points)} fourfold points, "
                f"{len(self.higher_points)} points of multiplicity >= 5")


@dataclass
class Arrangement:
    label: str
    fld: QuadField
    forms: list[LinearForm]
    bad_primes: frozenset[int]

    def __post_init__(self):
        if len(self.forms) != 8:
            raise MalformedArrangementError(
                f"need exactly 8 planes, got {len(self.forms)}")
        keys = {f.plane_key() for f in self.forms}
        if len(keys) != 8:
            raise MalformedArrangementError("planes are not pairwise distinct")

    def coeff_rows(self):
        return [[c for c in f.coeffs] for f in self.forms]


@dataclass
class ValidationReport:
    ok: bool
    line_violations: list[tuple[int, ...]]
    point_violations: list[tuple[tuple, tuple[int, ...]]]

    def __bool__(self):
        return self.ok


# --- exact linear algebra helpers ---


def _rank(rows) -> int:
    """Row rank of a matrix of KElem entries (Gaussian elimination over K)."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inv()
        m[rank] = [e * inv for e in m[rank]]
        for i in range(len(m)):
            if i != rank and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _det3(rows) -> KElem:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _triple_point(f1, f2, f3):
    """Intersection point of three independent planes, or None if rank < 3."""
    m = [f1.coeffs, f2.coeffs, f3.coeffs]
    minors = []
    for j in range(4):
        sub = [[row[k] for k in range(4) if k != j] for row in m]
        sgn = -1 if j % 2 else 1
        minors.append(sgn * _det3(sub))
    if all(v.is_zero() for v in minors):
        return None
    return tuple(minors)


def _normalize_point(pt):
    lead = next(c for c in pt if not c.is_zero())
    inv = lead.inv()
    return tuple(c * inv for c in pt)


def _point_key(pt):
    return tuple((c.x, c.y) for c in pt)


def _line_key(f1, f2):
    """Normalized dual Pluecker coordinates of the intersection line."""
    a, b = f1.coeffs, f2.coeffs
    minors = [a[i] * b[j] - a[j] * b[i]
              for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    lead = next((v for v in minors if not v.is_zero()), None)
    if lead is None:
        raise MalformedArrangementError("coincident planes")
    inv = lead.inv()
    return tuple(((v * inv).x, (v * inv).y) for v in minors)


def census(arr: Arrangement) -> Census:
    """Full incidence census: lines with plane multiplicities, and all points
    on three or more planes, found by exact 3x3 solves."""
    forms = arr.forms
    # distinct intersection lines and the planes through each
    lines: dict[tuple, set[int]] = {}
    for i, j in combinations(range(8), 2):
        lines.setdefault(_line_key(forms[i], forms[j]), set()).update((i, j))
    double = sum(1 for planes in lines.values() if len(planes) == 2)
    triple = sum(1 for planes in lines.values() if len(planes) == 3)
    line_planes = sorted(tuple(sorted(s)) for s in lines.values())
    triple_line_sets = [s for s in lines.values() if len(s) >= 3]

    # points on >= 3 planes
    points: dict[tuple, tuple] = {}
    incidences: dict[tuple, set[int]] = {}
    for i, j, k in combinations(range(8), 3):
        pt = _triple_point(forms[i], forms[j], forms[k])
        if pt is None:
            continue
        pt = _normalize_point(pt)
        key = _point_key(pt)
        points[key] = pt
        incidences.setdefault(key, set()).update((i, j, k))
    fourfold = []
    higher = []
    for key, inc in incidences.items():
        pt = points[key]
        if len(inc) == 4:
            inc_t = tuple(sorted(inc))
            rel = _incident_relation(arr, pt, inc_t)
            fourfold.append(FourfoldPoint(pt, inc_t,
                                          all(not c.is_zero() for c in rel)))
        elif len(inc) >= 5:
            higher.append((pt, tuple(sorted(inc))))
    fourfold.sort(key=lambda f: f.incident)
    higher.sort(key=lambda h: h[1])
    return Census(double, triple, fourfold, higher, line_planes)


def validate(arr: Arrangement) -> ValidationReport:
    """Admissibility: no six planes through a point, no four through a line."""
    c = census(arr)
    line_viol = [planes for planes in c.line_planes if len(planes) >= 4]
    point_viol = [(pt, inc) for pt, inc in c.higher_points if len(inc) >= 6]
    return ValidationReport(not line_viol and not point_viol, line_viol, point_viol)


def _incident_relation(arr: Arrangement, pt, incident):
    """Coefficients (c_i) of the unique relation sum c_i f_i = 0 among the
    four incident forms; computed by exact elimination."""
    rows = [list(arr.forms[i].coeffs) for i in incident]
    # kernel vector of the transpose: solve c^T M = 0 with M 4x4 of rank 3
    m = [[rows[i][j] for i in range(4)] for j in range(4)]  # transpose
    # Gaussian elimination keeping track of kernel
    zero = arr.fld.el(0)
    one = arr.fld.el(1)
    aug = [list(r) for r in m]
    n = 4
    piv_cols = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, n) if not aug[i][col].is_zero()), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = aug[rank][col].inv()
        aug[rank] = [e * inv for e in aug[rank]]
        for i in range(n):
            if i != rank and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        piv_cols.append(col)
        rank += 1
    free = [c for c in range(n) if c not in piv_cols]
    if len(free) != 1:
        raise UnsupportedSingularityError("tangent cone relation is not unique")
    fc = free[0]
    sol = [zero] * n
    sol[fc] = one
    for r, pc in enumerate(piv_cols):
        sol[pc] = -aug[r][fc]
    return sol


def fourfold_alpha(arr: Arrangement, pt) -> SquareClass:
    """Square class controlling the exceptional surface over a fourfold point.

    Scale the four incident forms by the coefficients of their unique linear
    relation, so the rescaled forms sum to zero and become x, y, z, -(x+y+z)
    in suitable tangent coordinates; the class is then the product of the
    relation coefficients and the values of the four non-incident forms,
    with one sign flip.
    """
    pt = _normalize_point(pt)
    incident = tuple(i for i in range(8)
                     if arr.forms[i].eval(pt).is_zero())
    if len(incident) != 4:
        raise UnsupportedSingularityError(
            f"point lies on {len(incident)} planes, not 4")
    rel = _incident_relation(arr, pt, incident)
    if any(c.is_zero() for c in rel):
        raise UnsupportedSingularityError(
            "three of the incident tangent forms are dependent")
    val = arr.fld.el(-1)
    for c in rel:
        val = val * c
    for j in range(8):
        if j not in incident:
            val = val * arr.forms[j].eval(pt)
    return SquareClass(val)


def fourfold_alphas(arr: Arrangement, cens: Census | None = None) -> list[SquareClass]:
    """Alpha classes of every fourfold point with a nondegenerate tangent cone."""
    cens = cens or census(arr)
    return [fourfold_alpha(arr, f.point) for f in cens.fourfold_points
            if f.generic_cone]


# ---------------------------------------------------------------------------
# built-in arrangements

_XF = QuadField(1)
_YF = QuadField(5)
_ZF = QuadField(-3)


def _forms(fld, rows):
    out = []
    for row in rows:
        out.append(LinearForm(tuple(
            c if isinstance(c, KElem) else fld.el(c) for c in row)))
    return out


def arrangement_x() -> Arrangement:
    # u^2 = x(x-z)(x-v)(x-z-v) y(y-z)(y-v)(y+v+2z)
    rows = [
        (1, 0, 0, 0),
        (1, 0, -1, 0),
        (1, 0, 0, -1),
        (1, 0, -1, -1),
        (0, 1, 0, 0),
        (0, 1, -1, 0),
        (0, 1, 0, -1),
        (0, 1, 2, 1),
    ]
    return Arrangement("X250", _XF, _forms(_XF, rows), frozenset({2, 3}))


def arrangement_y() -> Arrangement:
    # u^2 = xyzv(x+y+z)(phi*y - z + v)(x + y + phi*v)((1-phi)x + y - phi*z + phi*v)
    phi = KElem(_YF, Fraction(-1, 2), Fraction(1, 2))
    one = _YF.el(1)
    rows = [
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (1, 1, 1, 0),
        (_YF.el(0), phi, _YF.el(-1), one),
        (one, one, _YF.el(0), phi),
        (one - phi, one, -phi, phi),
    ]
    return Arrangement("Y", _YF, _forms(_YF, rows), frozenset({2}))


def arrangement_z() -> Arrangement:
    # u^2 = xyzv(x+y)(x+y+z-v)(zeta*x - y + zeta*z)(y - zeta*z - v)
    zeta = KElem(_ZF, Fraction(-1, 2), Fraction(1, 2))
    one = _ZF.el(1)
    rows = [
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (1, 1, 0, 0),
        (1, 1, 1, -1),
        (zeta, -one, zeta, _ZF.el(0)),
        (_ZF.el(0), one, -zeta, -one),
    ]
    return Arrangement("Z262", _ZF, _forms(_ZF, rows), frozenset({2}))


_BUILTINS = {
    "X250": arrangement_x, "X": arrangement_x,
    "Y": arrangement_y,
    "Z262": arrangement_z, "Z": arrangement_z,
}


def builtin(label: str) -> Arrangement:
    try:
        return _BUILTINS[label]()
    except KeyError:
        raise ArrangementError(f"unknown arrangement label {label!r}") from None


def builtin_labels() -> tuple[str, ...]:
    return ("X250", "Y", "Z262")


# ---------------------------------------------------------------------------
# arrangement files: 8 rows of 4 coordinate pairs over the ring basis


def to_dict(arr: Arrangement) -> dict:
    ring = None if arr.fld.is_rational else QuadRing(arr.fld.d)
    rows = []
    for f in arr.forms:
        row = []
        for c in f.coeffs:
            if ring is None:
                if c.y != 0:
                    raise ArrangementError("irrational coefficient over Q")
                num = c.x
                if num.denominator not in (1, 2):
                    raise ArrangementError(f"denominator {num.denominator} > 2")
                row.append([num.numerator, 0, num.denominator])
            else:
                den = 1
                xx, yy = c.x, c.y
                # coordinates over the integral basis
                if ring.half_basis:
                    a, b = xx - yy, 2 * yy
                else:
                    a, b = xx, yy
                if a.denominator == 2 or b.denominator == 2:
                    den, a, b = 2, a * 2, b * 2
                if a.denominator != 1 or b.denominator != 1:
                    raise ArrangementError("coefficient not half-integral")
                row.append([int(a), int(b), den])
        rows.append(row)
    return {"label": arr.label, "d": arr.fld.d, "forms": rows,
            "bad_primes": sorted(arr.bad_primes)}


def from_dict(data: dict) -> Arrangement:
    d = int(data["d"])
    fld = QuadField(d)
    ring = None if d == 1 else QuadRing(d)
    forms = []
    for row in data["forms"]:
        coeffs = []
        for a, b, *rest in row:
            den = rest[0] if rest else 1
            if den not in (1, 2):
                raise MalformedArrangementError(f"denominator flag {den}")
            if ring is None:
                coeffs.append(KElem(fld, Fraction(a, den), Fraction(0)))
            else:
                base = fld.from_quadint(QuadInt(ring, a, b))
                coeffs.append(KElem(fld, base.x / den, base.y / den))
        forms.append(LinearForm(tuple(coeffs)))
    return Arrangement(str(data.get("label", "custom")), fld, forms,
                       frozenset(int(p) for p in data.get("bad_primes", [2])))


def load_file(path) -> Arrangement:
    text = open(path).read()
    if text.lstrip().startswith("{"):
        return from_dict(json.loads(text))
    # TSV: first line "d <d>", then 8 lines of "a b [den]" x 4 columns
    lines = [l.split() for l in text.strip().splitlines() if l.strip()
             and not l.startswith("#")]
    if not lines or lines[0][0] != "d":
        raise MalformedArrangementError("TSV arrangement must start with 'd <disc>'")
    d = int(lines[0][1])
    rows = []
    for parts in lines[1:]:
        nums = [int(t) for t in parts]
        if len(nums) == 8:
            row = [[nums[2 * i], nums[2 * i + 1], 1] for i in range(4)]
        elif len(nums) == 12:
            row = [[nums[3 * i], nums[3 * i + 1], nums[3 * i + 2]] for i in range(4)]
        else:
            raise MalformedArrangementError("bad TSV row width")
        rows.append(row)
    return from_dict({"label": "custom", "d": d, "forms": rows})


# ---------------------------------------------------------------------------
# the degree-two self-map of X250 over Q(sqrt 2)


def octic_value(arr_rows, fld, pt):
    """Product of the eight reduced forms at a point (field indices)."""
    acc = fld.from_int(1)
    for row in arr_rows:
        v = fld.from_int(0)
        for c, t in zip(row, pt):
            v = fld.add(v, fld.mul(c, t))
        acc = fld.mul(acc, v)
    return acc


def on_double_cover(arr_rows, fld, pt5) -> bool:
    """Does (x, y, z, v, u) satisfy u^2 = f(x, y, z, v)?"""
    x, y, z, v, u = pt5
    return fld.mul(u, u) == octic_value(arr_rows, fld, (x, y, z, v))


def psi_eval(pt5, fld, sqrt2):
    """Image of a double-cover point of X250 under the two-to-one self-map.

    fld is a constructed field containing sqrt2 (passed explicitly so the
    caller controls which square root is used).  Raises IndeterminateError
    when all five image coordinates vanish.
    """
    x, y, z, v, u = pt5
    add, sub, mul = fld.add, fld.sub, fld.mul

    def n(k):
        return fld.from_int(k)

    inv2 = fld.inv(n(2))
    # Q = v^2 - 2xv + zv + 2x^2 - 2xz
    Q = add(add(mul(v, v), mul(n(-2), mul(x, v))), mul(z, v))
    Q = add(Q, mul(n(2), mul(x, x)))
    Q = sub(Q, mul(n(2), mul(x, z)))
    three_y_v = add(mul(n(3), y), v)
    three_z_v = add(mul(n(3), z), v)
    z_m_v = sub(z, v)
    z_p_v = add(z, v)
    x1 = mul(mul(x, sub(sub(x, v), z)), mul(z_m_v, three_y_v))
    y1 = mul(mul(inv2, three_z_v), mul(Q, sub(y, v)))
    z1 = mul(mul(inv2, Q), mul(three_y_v, z_p_v))
    v1 = mul(mul(inv2, Q), mul(three_y_v, z_m_v))
    u_fac = mul(mul(sub(v, z), mul(three_y_v, three_y_v)), mul(v, v))
    u_fac = mul(u_fac, sub(mul(n(2), x), add(v, z)))
    u_fac = mul(u_fac, mul(z_p_v, three_z_v))
    u_fac = mul(u_fac, mul(Q, Q))
    u1 = mul(mul(mul(sqrt2, inv2), u_fac), u)
    if x1 == 0 and y1 == 0 and z1 == 0 and v1 == 0 and u1 == 0:
        raise IndeterminateError("point lies in the indeterminacy locus")
    return (x1, y1, z1, v1, u1)
