"""3x3 complex linear algebra over an indefinite Hermitian form.

Matrices carry either exact cyclotomic entries or arbitrary-precision
mpmath complex entries.  Exact matrices support exact determinants,
exact equality and exact signature computation; the float path is used
for residual checks, eigenvalues and braid searches.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import Cyclo

DEFAULT_PREC = 256
DEFAULT_TOL = mpmath.mpf("1e-30")


class SingularMatrixError(ZeroDivisionError):
    pass


def _is_cyclo(x) -> bool:
    return isinstance(x, Cyclo)


class Mat3:
    """A 3x3 matrix with Cyclo (exact) or mpmath (float) entries."""

    __slots__ = ("rows", "exact")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs 3x3 entries")
        self.rows = rows
        self.exact = all(_is_cyclo(x) for r in rows for x in r)

    @classmethod
    def identity(cls, exact: bool = True) -> "Mat3":
        one, zero = (Cyclo.one(), Cyclo.zero()) if exact else (mpmath.mpc(1), mpmath.mpc(0))
        return cls([[one, zero, zero], [zero, one, zero], [zero, zero, one]])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"Mat3({self.rows!r})"

    # -- ring operations ----------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        a, b = self.rows, other.rows
        return Mat3(
            [
                [sum((a[i][k] * b[k][j] for k in range(1, 3)), a[i][0] * b[0][j]) for j in range(3)]
                for i in range(3)
            ]
        )

    def __add__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return Mat3([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return Mat3([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, k) -> "Mat3":
        return Mat3([[x * k for x in r] for r in self.rows])

    def __pow__(self, k: int) -> "Mat3":
        if k < 0:
            return self.inverse() ** (-k)
        result = Mat3.identity(self.exact)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def adjoint(self) -> "Mat3":
        """Conjugate transpose."""
        r = self.rows
        conj = (lambda x: x.conj()) if self.exact else mpmath.conj
        return Mat3([[conj(r[j][i]) for j in range(3)] for i in range(3)])

    def trace(self):
        r = self.rows
        return r[0][0] + r[1][1] + r[2][2]

    def det(self):
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def minor_sum(self):
        """Sum of the three principal 2x2 minors (second char-poly coefficient)."""
        r = self.rows
        return (
            (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            + (r[0][0] * r[2][2] - r[0][2] * r[2][0])
            + (r[0][0] * r[1][1] - r[0][1] * r[1][0])
        )

    def adjugate(self) -> "Mat3":
        r = self.rows
        cof = [
            [
                r[(i + 1) % 3][(j + 1) % 3] * r[(i + 2) % 3][(j + 2) % 3]
                - r[(i + 1) % 3][(j + 2) % 3] * r[(i + 2) % 3][(j + 1) % 3]
                for i in range(3)
            ]
            for j in range(3)
        ]
        return Mat3(cof)

    def inverse(self) -> "Mat3":
        d = self.det()
        adj = self.adjugate()
        if self.exact:
            q = d.is_rational()
            if q == 1:
                return adj
            if d.is_zero():
                raise SingularMatrixError("singular matrix")
            return adj.scale(d.inverse())
        if abs(d) < mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
            raise SingularMatrixError("singular matrix")
        return adj.scale(1 / d)

    # -- conversions --------------------------------------------------------

    def to_float(self, prec: int = DEFAULT_PREC) -> "Mat3":
        if not self.exact:
            return self
        return Mat3([[x.to_mpc(prec) for x in r] for r in self.rows])

    def max_abs(self) -> mpmath.mpf:
        m = self if not self.exact else self.to_float()
        return max(abs(x) for r in m.rows for x in r)

    def is_zero_exact(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        if self.exact and other.exact:
            return (self - other).is_zero_exact()
        raise TypeError("exact equality requires exact matrices")

    def __hash__(self):
        raise TypeError("Mat3 is not hashable")

    def apply(self, v):
        """Matrix-vector product; v is a length-3 sequence of entries."""
        return tuple(sum((self.rows[i][k] * v[k] for k in range(1, 3)), self.rows[i][0] * v[0]) for i in range(3))


# ---------------------------------------------------------------------------
# Signature


@dataclass(frozen=True)
class Signature:
    n_pos: int
    n_neg: int
    n_zero: int

    def __post_init__(self):
        if self.n_pos + self.n_neg + self.n_zero != 3:
            raise ValueError("signature counts must sum to 3")

    @property
    def verdict(self) -> str:
        if self.n_zero:
            return "degenerate"
        return f"({self.n_pos},{self.n_neg})"


def _descartes_positive(signs: list[int]) -> int:
    """Positive-root count via sign changes; valid for real-rooted polynomials."""
    seq = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def hermitian_signature(h: Mat3, prec: int = DEFAULT_PREC, tol=None) -> Signature:
    """Eigenvalue sign pattern of a Hermitian 3x3 matrix.

    Exact matrices are decided exactly (zero eigenvalues via exact
    zero-tests of the characteristic coefficients); float matrices use a
    numeric threshold.
    """
    if h.exact:
        if not (h - h.adjoint()).is_zero_exact():
            raise ValueError("matrix is not Hermitian")
        c2 = h.trace().real_part()
        c1 = h.minor_sum().real_part()
        c0 = h.det().real_part()
        s2, s1, s0 = c2.real_sign(), c1.real_sign(), c0.real_sign()
        # char poly: x^3 - c2 x^2 + c1 x - c0, all roots real
        if s0 != 0:
            pos = _descartes_positive([1, -s2, s1, -s0])
            return Signature(pos, 3 - pos, 0)
        if s1 != 0:
            pos = _descartes_positive([1, -s2, s1])
            return Signature(pos, 2 - pos, 1)
        if s2 != 0:
            return Signature(1, 0, 2) if s2 > 0 else Signature(0, 1, 2)
        return Signature(0, 0, 3)
    tol = DEFAULT_TOL if tol is None else tol
    with mpmath.workprec(prec):
        res = max(abs(x) for r in (h - h.adjoint()).rows for x in r)
        if res > mpmath.mpf(2) ** (-prec // 2):
            raise ValueError("matrix is not Hermitian")
        eigs = eigenvalues3(h, prec)
        pos = sum(1 for e in eigs if e.real > tol)
        neg = sum(1 for e in eigs if e.real < -tol)
        return Signature(pos, neg, 3 - pos - neg)


# ---------------------------------------------------------------------------
# Eigenvalues (closed-form cubic)


def _cubic_roots(a2, a1, a0, prec: int):
    """Roots of x^3 + a2 x^2 + a1 x + a0 by Cardano's formula."""
    with mpmath.workprec(prec + 30):
        a2, a1, a0 = mpmath.mpc(a2), mpmath.mpc(a1), mpmath.mpc(a0)
        shift = -a2 / 3
        p = a1 - a2 * a2 / 3
        q = 2 * a2**3 / 27 - a2 * a1 / 3 + a0
        scale = max(abs(p), abs(q), mpmath.mpf(1))
        tiny = mpmath.mpf(2) ** (-(prec + 10))
        if abs(p) <= tiny * scale and abs(q) <= tiny * scale:
            return [shift, shift, shift]
        disc = (q / 2) ** 2 + (p / 3) ** 3
        r = mpmath.sqrt(disc)
        u3 = -q / 2 + r
        if abs(u3) < abs(-q / 2 - r):
            u3 = -q / 2 - r
        c = u3 ** mpmath.mpf("1/3")
        omega = mpmath.expjpi(mpmath.mpf(2) / 3)
        roots = []
        for k in range(3):
            w = omega**k
            cw = c * w
            roots.append(cw - p / (3 * cw) + shift)
        return roots


def eigenvalues3(m: Mat3, prec: int = DEFAULT_PREC):
    """The three eigenvalues (unordered, with multiplicity) at `prec` bits."""
    mf = m.to_float(prec)
    with mpmath.workprec(prec + 30):
        tr = mf.trace()
        c1 = mf.minor_sum()
        d = mf.det()
        return _cubic_roots(-tr, c1, -d, prec)


# ---------------------------------------------------------------------------
# Projective comparisons

_CUBE_ROOTS_EXACT = None


def _cube_roots_exact():
    global _CUBE_ROOTS_EXACT
    if _CUBE_ROOTS_EXACT is None:
        _CUBE_ROOTS_EXACT = (Cyclo.one(), Cyclo.root(3, 1), Cyclo.root(3, 2))
    return _CUBE_ROOTS_EXACT


def projective_residual(a: Mat3, b: Mat3, prec: int = DEFAULT_PREC):
    """min over cube roots of unity w of max|a_ij - w*b_ij|."""
    with mpmath.workprec(prec):
        af, bf = a.to_float(prec), b.to_float(prec)
        omega = mpmath.expjpi(mpmath.mpf(2) / 3)
        best = None
        for k in range(3):
            w = omega**k
            d = max(abs(x - w * y) for r, s in zip(af.rows, bf.rows) for x, y in zip(r, s))
            if best is None or d < best:
                best = d
        return best


def projective_equal(a: Mat3, b: Mat3, tol=None, prec: int = DEFAULT_PREC) -> bool:
    """True iff a = w*b for a cube root of unity w, entrywise within tol."""
    if a.exact and b.exact:
        return any((a - b.scale(w)).is_zero_exact() for w in _cube_roots_exact())
    tol = DEFAULT_TOL if tol is None else tol
    return projective_residual(a, b, prec) <= tol


def projective_order(m: Mat3, max_order: int, tol=None, prec: int = DEFAULT_PREC):
    """Least k <= max_order with m^k projectively the identity, else None."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    tol = DEFAULT_TOL if tol is None else tol
    with mpmath.workprec(prec):
        mf = m.to_float(prec)
        ident = Mat3.identity(exact=False)
        p = mf
        for k in range(1, max_order + 1):
            if projective_residual(p, ident, prec) <= tol:
                return k
            p = p * mf
    return None


# ---------------------------------------------------------------------------
# Form preservation and isometry type


def form_residual(m: Mat3, h: Mat3, prec: int = DEFAULT_PREC):
    """max-norm of adjoint(m)*h*m - h."""
    with mpmath.workprec(prec):
        mf, hf = m.to_float(prec), h.to_float(prec)
        return (mf.adjoint() * hf * mf - hf).max_abs()


def trace_discriminant(tr, prec: int = DEFAULT_PREC):
    """Goldman's discriminant f(tr) = |tr|^4 - 8 Re(tr^3) + 18|tr|^2 - 27."""
    with mpmath.workprec(prec):
        t = mpmath.mpc(tr)
        a = abs(t) ** 2
        return a * a - 8 * (t**3).real + 18 * a - 27


def classify_isometry(tr, tol=None, prec: int = DEFAULT_PREC) -> str:
    """Isometry type from the trace of a det-1 form-preserving matrix.

    Returns 'loxodromic', 'regular-elliptic' or 'boundary' (repeated
    modulus-one eigenvalue: parabolic or reflection-like).
    """
    tol = DEFAULT_TOL if tol is None else tol
    f = trace_discriminant(tr, prec)
    if abs(f) <= tol:
        return "boundary"
    return "loxodromic" if f > 0 else "regular-elliptic"
