"""Exact arithmetic in Q(s) with s = q**(1/D), q a rational in (0, 1).

Rational powers q**r with r*D integral live here exactly.  Elements are
stored as integer coefficient vectors over the power basis 1, s, ..., s^(D-1)
with one common positive denominator.  The real embedding (s > 0) is used
only for signs and magnitudes, and is decided exactly by bracketing s
between rationals.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .kernel import as_rational, format_rational


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _exact_root(value: Fraction, k: int):
    p, r = value.numerator, value.denominator
    a, b = iroot(p, k), iroot(r, k)
    if a ** k == p and b ** k == r:
        return Fraction(a, b)
    return None


def _smallest_prime_factors(n: int):
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _reduce(q: Fraction, degree: int):
    # x^D - q is irreducible once q is no p-th power for primes p | D.
    changed = True
    while changed and degree > 1:
        changed = False
        for p in sorted(set(_smallest_prime_factors(degree))):
            root = _exact_root(q, p)
            if root is not None:
                q, degree, changed = root, degree // p, True
                break
    return q, degree


@lru_cache(maxsize=None)
def root_field(q, degree: int) -> "RootField":
    """Shared field instance for (q, degree)."""
    return RootField(q, degree)


class RootField:
    """The field Q(q^{1/D}) with its positive real embedding."""

    def __init__(self, q, degree: int = 1):
        q = as_rational(q)
        if not 0 < q:
            raise ValueError("q must be positive")
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.q_input = q
        self.degree_input = degree
        base, d = _reduce(q, degree)
        # s = q ** (1/degree) == base ** (1/d)
        self.base = base
        self.d = d
        self._bracket_cache: dict[int, tuple[Fraction, Fraction]] = {}

    def __repr__(self):
        return f"RootField(q={format_rational(self.q_input)}, D={self.degree_input})"

    def __eq__(self, other):
        return (isinstance(other, RootField) and self.base == other.base
                and self.d == other.d)

    def __hash__(self):
        return hash((self.base, self.d))

    @property
    def q(self) -> Fraction:
        return self.q_input

    def element(self, value) -> "QElem":
        if isinstance(value, QElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        v = as_rational(value)
        nums = [0] * self.d
        nums[0] = v.numerator
        return QElem(self, nums, v.denominator)

    def one(self) -> "QElem":
        return self.element(1)

    def zero(self) -> "QElem":
        return self.element(0)

    def gen_power(self, j: int) -> "QElem":
        """s ** j for any integer j."""
        t, u = divmod(j, self.d)
        c = self.base ** t
        nums = [0] * self.d
        nums[u] = c.numerator
        return QElem(self, nums, c.denominator)

    def power(self, r) -> "QElem":
        """q ** r for rational r with r * D integral."""
        r = as_rational(r)
        j = r * self.degree_input
        if j.denominator != 1:
            raise ValueError(
                f"q^{format_rational(r)} is outside Q(q^(1/{self.degree_input}))")
        return self.gen_power(int(j))

    def s_bracket(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rationals lo < s <= hi with hi - lo = 2**-bits (lo == hi if exact)."""
        hit = self._bracket_cache.get(bits)
        if hit is not None:
            return hit
        if self.d == 1:
            out = (self.base, self.base)
        else:
            p, r = self.base.numerator, self.base.denominator
            scaled = p * r ** (self.d - 1) << (bits * self.d)
            m = iroot(scaled, self.d)
            lo = Fraction(m, r << bits)
            hi = Fraction(m + 1, r << bits)
            out = (lo, hi)
        self._bracket_cache[bits] = out
        return out


class QElem:
    """An element sum_i (nums[i]/den) s^i of a :class:`RootField`."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: RootField, nums, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums, den = [-c for c in nums], -den
        g = den
        for c in nums:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.field = field
        self.nums = tuple(nums)
        self.den = den

    # -- structure -------------------------------------------------------
    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.nums]

    def to_rational(self):
        """The value as a Fraction if it lies in Q, else None."""
        if any(self.nums[1:]):
            return None
        return Fraction(self.nums[0], self.den)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def _coerce(self, other):
        if isinstance(other, QElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return QElem(self.field, [a + b for a, b in zip(self.nums, other.nums)], d1)
        return QElem(self.field,
                     [a * d2 + b * d1 for a, b in zip(self.nums, other.nums)],
                     d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.field, [-a for a in self.nums], self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return QElem(self.field, [a * other.numerator for a in self.nums],
                         self.den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.field.d
        p, r = self.field.base.numerator, self.field.base.denominator
        low = [0] * d
        high = [0] * d
        for i, a in enumerate(self.nums):
            if not a:
                continue
            for j, b in enumerate(other.nums):
                if b:
                    k = i + j
                    if k < d:
                        low[k] += a * b
                    else:
                        high[k - d] += a * b
        # s^d = p / r
        if any(high):
            nums = [lo * r + hi * p for lo, hi in zip(low, high)]
            return QElem(self.field, nums, self.den * other.den * r)
        return QElem(self.field, low, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(s)")
        support = [i for i, c in enumerate(self.nums) if c]
        if len(support) == 1:
            i = support[0]
            c = Fraction(self.nums[i], self.den)
            return self.field.gen_power(-i) * (1 / c)
        if len(support) == 2 and support[0] == 0:
            return self._binomial_inverse(support[1])
        return self._general_inverse()

    def _binomial_inverse(self, u: int) -> "QElem":
        # (c0 + c s^u)^{-1} via t = -c s^u / c0 and t^L rational.
        d = self.field.d
        c0 = Fraction(self.nums[0], self.den)
        c = Fraction(self.nums[u], self.den)
        period = d // gcd(u, d)
        t = self.field.gen_power(u) * (-c / c0)
        acc = self.field.one()
        tp = self.field.one()
        for _ in range(period - 1):
            tp = tp * t
            acc = acc + tp
        tl = (tp * t).to_rational()
        # 1/(c0 (1 - t)) = (1 + t + ... + t^{L-1}) / (c0 (1 - t^L))
        return acc * (1 / (c0 * (1 - tl)))

    def _general_inverse(self) -> "QElem":
        d = self.field.d
        # columns: coefficients of self * s^j
        cols = []
        for j in range(d):
            cols.append((self * self.field.gen_power(j)).coefficients())
        mat = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))]
               for i in range(d)]
        for c in range(d):
            piv = next(i for i in range(c, d) if mat[i][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [v / pv for v in mat[c]]
            for i in range(d):
                if i != c and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
        sol = [mat[i][d] for i in range(d)]
        den = lcm(*(v.denominator for v in sol))
        return QElem(self.field, [int(v * den) for v in sol], den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(s)")
            return self * (1 / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** -k
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nums == other.nums and self.den == other.den

    def __hash__(self):
        r = self.to_rational()
        if r is not None:
            return hash(r)
        return hash((self.nums, self.den))

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the real value, width O(2**-bits)."""
        lo_s, hi_s = self.field.s_bracket(bits)
        lo = hi = Fraction(0)
        plo = phi = Fraction(1)
        for c in self.nums:
            if c > 0:
                lo += c * plo
                hi += c * phi
            elif c < 0:
                lo += c * phi
                hi += c * plo
            plo *= lo_s
            phi *= hi_s
        return lo / self.den, hi / self.den

    def sign(self) -> int:
        r = self.to_rational()
        if r is not None:
            return (r > 0) - (r < 0)
        bits = 64
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def approx(self, bits: int = 80) -> Fraction:
        lo, hi = self.enclosure(bits)
        return (lo + hi) / 2

    def __float__(self):
        return float(self.approx())

    def __repr__(self):
        return f"QElem({self})"

    def __str__(self):
        r = self.to_rational()
        if r is not None:
            return format_rational(r)
        parts = []
        for i, c in enumerate(self.coefficients()):
            if c:
                mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
                coef = format_rational(c)
                parts.append(coef if not mono else f"{coef}*{mono}")
        return " + ".join(parts) + \
            f" [s={format_rational(self.field.base)}^(1/{self.field.d})]"


def to_real_string(value, digits: int = 12) -> str:
    """Decimal rendering of an exact rational or field element."""
    if isinstance(value, QElem):
        value = value.approx(bits=4 * digits + 40)
    value = Fraction(value)
    if value == 0:
        return "0"
    return f"{float(value):.{digits}g}"


def enclose(value, bits: int) -> tuple[Fraction, Fraction]:
    if isinstance(value, QElem):
        r = value.to_rational()
        if r is None:
            return value.enclosure(bits)
        value = r
    value = Fraction(value)
    return value, value


def _demote(value):
    if isinstance(value, QElem):
        r = value.to_rational()
        return value if r is None else r
    return value


def compare_reals(x, y, max_bits: int = 1 << 14) -> int:
    """Sign of x - y for rationals or elements of possibly different fields."""
    x, y = _demote(x), _demote(y)
    if isinstance(x, QElem) and isinstance(y, QElem) and x.field == y.field:
        return (x - y).sign()
    if not isinstance(x, QElem) and not isinstance(y, QElem):
        d = Fraction(x) - Fraction(y)
        return (d > 0) - (d < 0)
    bits = 64
    while bits <= max_bits:
        xlo, xhi = enclose(x, bits)
        ylo, yhi = enclose(y, bits)
        if xhi < ylo:
            return -1
        if yhi < xlo:
            return 1
        bits *= 2
    raise ArithmeticError("could not separate the two values")


def real_abs(value):
    if isinstance(value, QElem):
        return abs(value)
    return abs(Fraction(value))
