"""Search for rational-angle trace parameters and cosine-identity suites.

The central object is s = e^{ia} + e^{ib} + e^{-i(a+b)} for angles a, b that
are rational multiples of pi.  A pair (n, m) is admissible when

    minor:  cos(a) + cos(b) + cos(a+b) = cos(2*pi/n)
    main:   cos(2*pi/m) - cos(2*pi/n)
            - cos(a-b) - cos(a+2b) - cos(2a+b) = 1

have a common solution.  `search` enumerates angle pairs on a rational grid,
prefilters numerically with numpy, and confirms survivors in exact
cyclotomic arithmetic.

The module also carries exact residual evaluators for the classical
vanishing-cosine-sum identities used to classify the solutions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

import mpmath
import numpy as np

from .exact import Angle, Cyclo, angle, cos_exact, root_of_unity
from .linalg import DEFAULT_PREC

# ---------------------------------------------------------------------------
# Exact residuals


def trace_s(a: Angle, b: Angle) -> Cyclo:
    """s = e^{ia} + e^{ib} + e^{-i(a+b)}, exactly."""
    return root_of_unity(a) + root_of_unity(b) + root_of_unity(-(a + b))


def minor_residual(n: int, a: Angle, b: Angle) -> Cyclo:
    """cos(a) + cos(b) + cos(a+b) - cos(2*pi/n)."""
    return cos_exact(a) + cos_exact(b) + cos_exact(a + b) - cos_exact(angle(2, n))


def main_residual(m: int, n: int, a: Angle, b: Angle) -> Cyclo:
    """cos(2*pi/m) - cos(2*pi/n) - cos(a-b) - cos(a+2b) - cos(2a+b) - 1."""
    return (
        cos_exact(angle(2, m))
        - cos_exact(angle(2, n))
        - cos_exact(a - b)
        - cos_exact(a + b.scaled(2))
        - cos_exact(a.scaled(2) + b)
        - 1
    )


def parameter_feasible(n: int, m: int) -> bool:
    """Whether 2*cos(pi/m) >= 2*cos^2(pi/n), exactly."""
    diff = cos_exact(angle(1, m)) * 2 - cos_exact(angle(2, n)) - 1
    return diff.is_zero() or diff.real_sign() > 0


# ---------------------------------------------------------------------------
# Orbit canonicalization

_TWO_THIRDS = Fraction(2, 3)


def _canon_frac(q: Fraction) -> Fraction:
    return q % 2


def orbit(a: Angle, b: Angle) -> set:
    """All 36 images of (a, b) under the symmetries of s.

    s is unchanged by permuting the exponents {a, b, -(a+b)}, conjugated by
    negating them, and multiplied by a cube root of unity when all three are
    shifted by 2*pi/3.  Pairs are returned as (Fraction, Fraction) multiples
    of pi in [0, 2).
    """
    import itertools

    base = (a.frac, b.frac, -(a.frac + b.frac))
    out = set()
    for perm in itertools.permutations(range(3)):
        for sign in (1, -1):
            for k in range(3):
                shift = k * _TWO_THIRDS
                x = _canon_frac(sign * base[perm[0]] + shift)
                y = _canon_frac(sign * base[perm[1]] + shift)
                out.add((x, y))
    return out


def canonicalize_ab(a: Angle, b: Angle) -> tuple:
    """Lexicographically least orbit member, as a hashable key."""
    return min(orbit(a, b))


# ---------------------------------------------------------------------------
# Search


@dataclass(frozen=True)
class Candidate:
    n: int
    m: int
    a: Angle
    b: Angle
    exact_confirmed: bool
    parameter_feasible: bool

    def s_value(self, prec: int = DEFAULT_PREC):
        with mpmath.workprec(prec):
            return (
                mpmath.expjpi(mpmath.mpf(self.a.num) / self.a.den)
                + mpmath.expjpi(mpmath.mpf(self.b.num) / self.b.den)
                + mpmath.expjpi(
                    -(Fraction(self.a.num, self.a.den) + Fraction(self.b.num, self.b.den))
                )
            )

    def to_dict(self, digits: int = 50) -> dict:
        with mpmath.workprec(int(digits * 3.33) + 20):
            s = self.s_value(int(digits * 3.33) + 20)
            s_re = mpmath.nstr(s.real, digits, strip_zeros=False)
            s_im = mpmath.nstr(s.imag, digits, strip_zeros=False)
        return {
            "n": self.n,
            "m": self.m,
            "a": {"num": self.a.num, "den": self.a.den},
            "b": {"num": self.b.num, "den": self.b.den},
            "s": {"re": s_re, "im": s_im},
            "exact_confirmed": self.exact_confirmed,
            "parameter_feasible": self.parameter_feasible,
        }


def _angle_grid(den_max: int):
    """All reduced fractions q in [0, 2) with denominator <= den_max."""
    fracs = []
    for den in range(1, den_max + 1):
        for num in range(0, 2 * den):
            if gcd(num, den) == 1:
                fracs.append((num, den))
    return fracs


def _confirm(item):
    n, m, (anum, aden), (bnum, bden) = item
    a, b = angle(anum, aden), angle(bnum, bden)
    ok = minor_residual(n, a, b).is_zero() and main_residual(m, n, a, b).is_zero()
    return item, ok, parameter_feasible(n, m)


def search(
    den_max: int = 90,
    n_max: int = 12,
    m_max: int = 12,
    prefilter_tol: float = 1e-9,
    workers: int = 1,
) -> list:
    """Enumerate exact solutions of the minor/main equations on the grid.

    Angle pairs (a, b) with denominators <= den_max are screened in float
    arithmetic against every n <= n_max and m <= m_max, deduplicated up to
    the 36-element symmetry orbit of s, and the surviving representatives
    are confirmed in exact arithmetic.  Returns Candidates sorted by
    (n, m, a, b); entries that fail exact confirmation are kept but
    flagged.
    """
    fracs = _angle_grid(den_max)
    qs = np.array([f[0] / f[1] for f in fracs])
    th = np.pi * qs
    cos_th = np.cos(th)
    cos_n = {n: np.cos(2 * np.pi / n) for n in range(3, n_max + 1)}
    cos_m = {m: np.cos(2 * np.pi / m) for m in range(3, m_max + 1)}

    # orbit key -> per-(n, m) least grid hit
    hits: dict = {}
    for i in range(len(fracs)):
        a_th, a_cos = th[i], cos_th[i]
        j_th = th[i:]
        v = a_cos + cos_th[i:] + np.cos(a_th + j_th)
        diff_cos = np.cos(a_th - j_th)
        sum1 = np.cos(a_th + 2 * j_th)
        sum2 = np.cos(2 * a_th + j_th)
        lhs_core = -diff_cos - sum1 - sum2 - 1.0
        for n, cn in cos_n.items():
            idx = np.nonzero(np.abs(v - cn) < prefilter_tol)[0]
            if idx.size == 0:
                continue
            for j_off in idx:
                j = i + int(j_off)
                core = lhs_core[j_off] - cn
                for m, cm in cos_m.items():
                    if abs(cm + core) < prefilter_tol:
                        pair = (fracs[i], fracs[j])
                        key = (n, m) + tuple(
                            canonicalize_ab(angle(*fracs[i]), angle(*fracs[j]))
                        )
                        prev = hits.get(key)
                        if prev is None or pair < prev:
                            hits[key] = pair
    items = [
        (key[0], key[1], pair[0], pair[1]) for key, pair in sorted(hits.items())
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            confirmed = list(pool.map(_confirm, items))
    else:
        confirmed = [_confirm(it) for it in items]
    out = []
    for (n, m, af, bf), ok, feas in confirmed:
        out.append(
            Candidate(
                n=n,
                m=m,
                a=angle(*af),
                b=angle(*bf),
                exact_confirmed=ok,
                parameter_feasible=feas,
            )
        )
    out.sort(key=lambda c: (c.n, c.m, c.a.frac, c.b.frac))
    return out


def results_to_json(cands: Iterable[Candidate], digits: int = 50) -> str:
    return json.dumps([c.to_dict(digits) for c in cands], indent=2)


# ---------------------------------------------------------------------------
# Cosine identity suites
#
# Entries are (coefficient, numerator, denominator) triples: the identity
# asserts sum coeff * cos(phi + pi*num/den) = target, with phi = 0 for the
# non-parametric ones.

_COSINE_SUMS = {
    "a": ([(1, 0, 1), (1, 2, 3), (1, 4, 3)], Fraction(0), True),
    "b": (
        [
            (1, 0, 1),
            (1, 2, 5),
            (1, -2, 5),
            (-1, 2, 15),
            (-1, -2, 15),
            (1, 7, 15),
            (1, -7, 15),
        ],
        Fraction(0),
        True,
    ),
    "c": (
        [
            (1, 0, 1),
            (-1, 1, 5),
            (-1, -1, 5),
            (1, 1, 15),
            (1, -1, 15),
            (-1, 4, 15),
            (-1, -4, 15),
        ],
        Fraction(0),
        True,
    ),
    "d": ([(1, 1, 3)], Fraction(1, 2), False),
    "e": ([(1, 1, 5), (-1, 2, 5)], Fraction(1, 2), False),
    "f": ([(1, 1, 5), (-1, 1, 15), (1, 4, 15)], Fraction(1, 2), False),
    "g": ([(-1, 2, 5), (1, 2, 15), (-1, 7, 15)], Fraction(1, 2), False),
    "h": (
        [(-1, 1, 15), (1, 2, 15), (1, 4, 15), (-1, 7, 15)],
        Fraction(1, 2),
        False,
    ),
    "i": ([(1, 1, 7), (-1, 2, 7), (1, 3, 7)], Fraction(1, 2), False),
    "j": (
        [(1, 1, 7), (-1, 2, 7), (1, 2, 21), (-1, 5, 21)],
        Fraction(1, 2),
        False,
    ),
    "k": (
        [(1, 1, 7), (1, 3, 7), (-1, 1, 21), (1, 8, 21)],
        Fraction(1, 2),
        False,
    ),
    "l": (
        [(-1, 2, 7), (1, 3, 7), (1, 4, 21), (1, 10, 21)],
        Fraction(1, 2),
        False,
    ),
    "m": (
        [(1, 1, 7), (-1, 1, 21), (1, 2, 21), (-1, 5, 21), (1, 8, 21)],
        Fraction(1, 2),
        False,
    ),
    "n": (
        [(-1, 2, 7), (1, 2, 21), (1, 4, 21), (-1, 5, 21), (1, 10, 21)],
        Fraction(1, 2),
        False,
    ),
    "o": (
        [(1, 3, 7), (-1, 1, 21), (1, 4, 21), (1, 8, 21), (1, 10, 21)],
        Fraction(1, 2),
        False,
    ),
}

COSINE_SUM_LABELS = tuple(_COSINE_SUMS)


def cosine_sum_residual(label: str, phi: Optional[Angle] = None) -> Cyclo:
    """Exact residual of vanishing-cosine-sum identity `label` ('a'..'o').

    The parametric identities 'a', 'b', 'c' hold for every angle phi; the
    remaining ones are fixed sums (phi is ignored, treated as 0).
    """
    if label not in _COSINE_SUMS:
        raise KeyError(f"unknown identity {label!r}")
    terms, target, parametric = _COSINE_SUMS[label]
    base = phi if (parametric and phi is not None) else angle(0, 1)
    total = Cyclo.rational(-target)
    for coeff, num, den in terms:
        total = total + cos_exact(base + angle(num, den)) * coeff
    return total


# (two_theta, a, b) as multiples of pi; parametric rows map psi -> angles.
_TRACE_TABLE_FIXED = {
    "iii": ((1, 3), (1, 3), (1, 12)),
    "iv": ((1, 5), (1, 3), (1, 30)),
    "v": ((3, 5), (1, 3), (7, 30)),
    "vi": ((1, 2), (2, 7), (4, 7)),
    "vii": ((1, 2), (2, 9), (13, 45)),
    "viii": ((1, 2), (2, 9), (31, 45)),
    "ix": ((1, 7), (2, 9), (11, 63)),
    "x": ((5, 7), (2, 9), (29, 63)),
    "xi": ((3, 7), (2, 9), (47, 63)),
    "xii": ((2, 5), (0, 1), (2, 5)),
    "xiii": ((4, 5), (0, 1), (4, 5)),
}

TRACE_TABLE_LABELS = ("i", "ii") + tuple(_TRACE_TABLE_FIXED)


def trace_table_angles(label: str, psi: Optional[Angle] = None):
    """(2*theta, a, b) for classified solution `label` of the half-sum equation.

    Rows 'i' and 'ii' are one-parameter families in psi; the rest are fixed.
    """
    if label == "i":
        if psi is None:
            raise ValueError("row 'i' needs psi")
        two_theta = angle(2, 3)
        a = angle(1, 1) - angle_div(psi, 3)
        b = angle_div(psi, 6)
        return two_theta, a, b
    if label == "ii":
        if psi is None:
            raise ValueError("row 'ii' needs psi")
        two_theta = psi
        a = angle_div(psi, 3).scaled(2)
        b = angle(1, 3) - angle_div(psi, 3)
        return two_theta, a, b
    if label not in _TRACE_TABLE_FIXED:
        raise KeyError(f"unknown row {label!r}")
    tt, aa, bb = _TRACE_TABLE_FIXED[label]
    return angle(*tt), angle(*aa), angle(*bb)


def angle_div(t: Angle, k: int) -> Angle:
    """t / k as an Angle, dividing the canonical representative."""
    q = t.frac / k
    return angle(q.numerator, q.denominator)


def _frac_angle(q: Fraction) -> Angle:
    return angle(q.numerator, q.denominator)


def trace_table_residual(label: str, psi: Optional[Angle] = None) -> Cyclo:
    """cos(2theta) - cos(a-b) - cos(a+2b) - cos(2a+b) - 1/2 for row `label`."""
    two_theta, a, b = trace_table_angles(label, psi)
    return (
        cos_exact(two_theta)
        - cos_exact(a - b)
        - cos_exact(a + b.scaled(2))
        - cos_exact(a.scaled(2) + b)
        - Fraction(1, 2)
    )


def factorization_residual(a: Angle, b: Angle) -> Cyclo:
    """1 + cos(a-b) + cos(a+2b) + cos(2a+b)
    - 4 cos((a-b)/2) cos((a+2b)/2) cos((2a+b)/2)."""
    lhs = Cyclo.one() + cos_exact(a - b) + cos_exact(a + b.scaled(2)) + cos_exact(
        a.scaled(2) + b
    )
    # halve a single coherent representative of each combination, so the
    # three half-angles satisfy h1 + h2 = h3 exactly
    af, bf = a.frac, b.frac
    h1 = _frac_angle((af - bf) / 2)
    h2 = _frac_angle((af + 2 * bf) / 2)
    h3 = _frac_angle((2 * af + bf) / 2)
    rhs = cos_exact(h1) * cos_exact(h2) * cos_exact(h3) * 4
    return lhs - rhs


def half_angle_residuals(a: Angle, b: Angle) -> tuple:
    """Residuals of the three half-angle regroupings of the main sum:

    cos(b) + cos(a+b)      = 2 cos(a/2) cos(a/2 + b)
    cos(a+2b) + 1          = 2 cos^2(a/2 + b)
    cos(a-b) + cos(2a+b)   = 2 cos(3a/2) cos(a/2 + b)
    """
    half_a = _frac_angle(a.frac / 2)
    mid = _frac_angle(a.frac / 2 + b.frac)
    r1 = cos_exact(b) + cos_exact(a + b) - cos_exact(half_a) * cos_exact(mid) * 2
    r2 = cos_exact(a + b.scaled(2)) + 1 - cos_exact(mid) * cos_exact(mid) * 2
    r3 = (
        cos_exact(a - b)
        + cos_exact(a.scaled(2) + b)
        - cos_exact(half_a.scaled(3)) * cos_exact(mid) * 2
    )
    return r1, r2, r3
