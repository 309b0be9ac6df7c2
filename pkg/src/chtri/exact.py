"""Exact angles (rational multiples of pi) and cyclotomic numbers.

An ``Angle`` is pi times a reduced fraction, canonicalized to [0, 2pi).
A ``Cyclo`` is an element of a cyclotomic field Q(zeta_N), stored as a
sparse rational combination of powers of zeta_N = e^{2*pi*i/N}.  Zero
testing (and hence equality) is exact: the coefficient vector is reduced
modulo the N-th cyclotomic polynomial, whose power basis is a Q-basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

CONDUCTOR_LIMIT = 10**6


class ConductorError(ValueError):
    """Raised when an operation would exceed the conductor bound."""


# ---------------------------------------------------------------------------
# Angles


@dataclass(frozen=True)
class Angle:
    """The angle pi*num/den, stored reduced with 0 <= num/den < 2."""

    num: int
    den: int

    @property
    def frac(self) -> Fraction:
        """The angle as a fraction of pi."""
        return Fraction(self.num, self.den)

    def __add__(self, other: "Angle") -> "Angle":
        return angle_from_fraction(self.frac + other.frac)

    def __sub__(self, other: "Angle") -> "Angle":
        return angle_from_fraction(self.frac - other.frac)

    def __neg__(self) -> "Angle":
        return angle_from_fraction(-self.frac)

    def scaled(self, q) -> "Angle":
        """The angle multiplied by a rational factor (mod 2pi)."""
        return angle_from_fraction(self.frac * Fraction(q))

    def radians(self, prec: int = 53):
        with mpmath.workprec(prec):
            return mpmath.pi * mpmath.mpf(self.num) / self.den

    def __str__(self) -> str:
        if self.num == 0:
            return "0"
        if self.den == 1:
            return f"{self.num}pi" if self.num != 1 else "pi"
        n = "" if self.num == 1 else str(self.num)
        return f"{n}pi/{self.den}"


def angle(num: int, den: int = 1) -> Angle:
    """Build the angle pi*num/den, canonicalized to [0, 2pi)."""
    if den == 0:
        raise ValueError("invalid angle")
    q = Fraction(num, den) % 2
    return Angle(q.numerator, q.denominator)


def angle_from_fraction(q: Fraction) -> Angle:
    q = Fraction(q) % 2
    return Angle(q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# Cyclotomic polynomials (integer coefficients, ascending order)


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _polydiv_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce_mod_cyclotomic(n: int, dense: list[int]) -> list[int]:
    """Reduce an integer coefficient vector (length <= n) mod Phi_n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    a = list(dense) + [0] * (n - len(dense))
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            for j in range(len(phi)):
                a[i - deg + j] -= c * phi[j]
    return a[:deg]


# ---------------------------------------------------------------------------
# Cyclotomic numbers


def _coerce(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo.rational(x)
    return None


class Cyclo:
    """A cyclotomic number: a rational combination of N-th roots of unity."""

    __slots__ = ("n", "c", "_canon")

    def __init__(self, n: int, coeffs: dict[int, Fraction]):
        if n < 1:
            raise ValueError("conductor must be positive")
        if n > CONDUCTOR_LIMIT:
            raise ConductorError("conductor too large")
        c = {}
        for e, v in coeffs.items():
            if v:
                e %= n
                c[e] = c.get(e, Fraction(0)) + v
        c = {e: v for e, v in c.items() if v}
        # cheap conductor shrink: gcd of exponents with n
        if c:
            g = n
            for e in c:
                g = math.gcd(g, e)
                if g == 1:
                    break
            if g > 1:
                n = n // g
                c = {e // g: v for e, v in c.items()}
        else:
            n = 1
        self.n = n
        self.c = c
        self._canon = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Cyclo":
        return cls(1, {})

    @classmethod
    def one(cls) -> "Cyclo":
        return cls(1, {0: Fraction(1)})

    @classmethod
    def rational(cls, q) -> "Cyclo":
        return cls(1, {0: Fraction(q)})

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclo":
        """zeta_n^k."""
        return cls(n, {k % n: Fraction(1)})

    @classmethod
    def i(cls) -> "Cyclo":
        return cls.root(4, 1)

    # -- representation -----------------------------------------------------

    def lifted(self, m: int) -> dict[int, Fraction]:
        """Coefficients viewed in conductor m (n must divide m)."""
        step = m // self.n
        return {e * step: v for e, v in self.c.items()}

    def canonical(self) -> tuple[Fraction, ...]:
        """Coefficients on the power basis 1..zeta^{phi(n)-1}, reduced mod Phi_n."""
        if self._canon is None:
            n = self.n
            if not self.c:
                self._canon = ()
            else:
                lcm = 1
                for v in self.c.values():
                    lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
                dense = [0] * n
                for e, v in self.c.items():
                    dense[e] = v.numerator * (lcm // v.denominator)
                red = _reduce_mod_cyclotomic(n, dense)
                while red and red[-1] == 0:
                    red.pop()
                self._canon = tuple(Fraction(x, lcm) for x in red)
        return self._canon

    def canonical_at(self, n: int) -> tuple[Fraction, ...]:
        """Canonical coefficients viewed in conductor n (a multiple of self.n)."""
        if n == self.n:
            return self.canonical()
        if n % self.n:
            raise ValueError("conductor must be a multiple")
        if not self.c:
            return ()
        lifted = self.lifted(n)
        lcm = 1
        for v in lifted.values():
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        dense = [0] * n
        for e, v in lifted.items():
            dense[e] = v.numerator * (lcm // v.denominator)
        red = _reduce_mod_cyclotomic(n, dense)
        while red and red[-1] == 0:
            red.pop()
        return tuple(Fraction(x, lcm) for x in red)

    def __repr__(self) -> str:
        if not self.c:
            return "Cyclo(0)"
        terms = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                terms.append(str(v))
            else:
                terms.append(f"{v}*z{self.n}^{e}")
        return "Cyclo(" + " + ".join(terms) + ")"

    # -- arithmetic ---------------------------------------------------------

    def _common(self, other: "Cyclo") -> tuple[int, dict, dict]:
        n = self.n * other.n // math.gcd(self.n, other.n)
        if n > CONDUCTOR_LIMIT:
            raise ConductorError("conductor too large")
        return n, self.lifted(n), other.lifted(n)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n, a, b = self._common(other)
        for e, v in b.items():
            a[e] = a.get(e, Fraction(0)) + v
        return Cyclo(n, a)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Cyclo(self.n, {e: -v for e, v in self.c.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclo(self.n, {e: v * q for e, v in self.c.items()})
        if not isinstance(other, Cyclo):
            return NotImplemented
        n, a, b = self._common(other)
        out: dict[int, Fraction] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                if e >= n:
                    e -= n
                out[e] = out.get(e, Fraction(0)) + v1 * v2
        return Cyclo(n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / Cyclo.rational(other) if False else self * (1 / Fraction(other))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int) -> "Cyclo":
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Cyclo":
        return Cyclo(self.n, {(self.n - e) % self.n: v for e, v in self.c.items()})

    def abs2(self) -> "Cyclo":
        """|x|^2 = x * conj(x)."""
        return self * self.conj()

    def real_part(self) -> "Cyclo":
        return (self + self.conj()) * Fraction(1, 2)

    def imag_times_i(self) -> "Cyclo":
        """x - Re(x) = i*Im(x), kept exactly."""
        return (self - self.conj()) * Fraction(1, 2)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("Cyclo is not hashable")

    def is_rational(self):
        """The value as a Fraction if rational, else None."""
        can = self.canonical()
        if not can:
            return Fraction(0)
        if any(can[1:]):
            return None
        return can[0]

    def is_real(self) -> bool:
        return (self - self.conj()).is_zero()

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse, via exact linear solve on the power basis."""
        n = self.n
        deg = len(cyclotomic_poly(n)) - 1
        cols = []
        for idx in range(deg):
            can = (self * Cyclo.root(n, idx)).canonical_at(n)
            col = list(can) + [Fraction(0)] * (deg - len(can))
            cols.append(col)
        # solve  sum_i x_i * cols[i] = e_0  by Gaussian elimination
        mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        for col in range(deg):
            piv = None
            for r in range(col, deg):
                if mat[r][col]:
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("inverse of zero cyclotomic number")
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            rhs[col] *= inv
            for r in range(deg):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                    rhs[r] -= f * rhs[col]
        return Cyclo(n, {e: rhs[e] for e in range(deg)})

    # -- numeric conversion -------------------------------------------------

    def coeff_mass(self) -> Fraction:
        return sum((abs(v) for v in self.c.values()), Fraction(0))

    def to_mpc(self, prec: int = 53):
        """Numeric value at `prec` bits; error <= 2^(3-prec)*(1+sum|coeffs|)."""
        if prec < 53:
            raise ValueError("precision must be at least 53 bits")
        with mpmath.workprec(prec + 10):
            total = mpmath.mpc(0)
            for e, v in self.c.items():
                coeff = mpmath.mpf(v.numerator) / v.denominator
                total += coeff * mpmath.expjpi(mpmath.mpf(2 * e) / self.n)
        return total

    def real_sign(self) -> int:
        """Sign of a real cyclotomic number (-1, 0, or +1). Exact."""
        if self.is_zero():
            return 0
        prec = 128
        mass = float(1 + self.coeff_mass())
        while True:
            val = self.to_mpc(prec)
            bound = mpmath.mpf(2) ** (3 - prec) * mass
            if abs(val.real) > 4 * bound:
                return 1 if val.real > 0 else -1
            prec *= 2
            if prec > 1 << 16:
                raise RuntimeError("cannot determine sign; value may not be real")


# ---------------------------------------------------------------------------
# Trigonometric constructors


def root_of_unity(t: Angle) -> Cyclo:
    """e^{i*t} as an exact cyclotomic number."""
    return Cyclo.root(2 * t.den, t.num)


def cos_exact(t: Angle) -> Cyclo:
    """cos(t) = (e^{it} + e^{-it})/2, exactly."""
    r = root_of_unity(t)
    return (r + r.conj()) * Fraction(1, 2)


def sin_exact(t: Angle) -> Cyclo:
    """sin(t) = cos(pi/2 - t), exactly."""
    return cos_exact(angle(t.den - 2 * t.num, 2 * t.den))


def to_float(x: Cyclo, prec: int = 53):
    """Numeric value of a Cyclo as an mpmath complex at `prec` bits."""
    return x.to_mpc(prec)
