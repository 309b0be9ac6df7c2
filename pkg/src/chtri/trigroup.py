"""Triangle groups generated by three complex reflections, with 2-fold symmetry.

Generators follow the standard parameterization by (p, rho, sigma, tau):
the three reflections rotate their polar vectors by e^{2*pi*i/p}, and the
off-diagonal parameters fix the mutual position of the mirrors.  In
symmetric mode sigma = tau = sqrt(rho + conj(rho)) and an extra isometry S
conjugates the generator pairs into each other with S^2 = R1*R2*R3.

Groups from the classified candidate list are built with exact cyclotomic
entries; free-form parameters take the arbitrary-precision float path.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .exact import Angle, Cyclo, angle, cos_exact, root_of_unity
from .linalg import (
    DEFAULT_PREC,
    DEFAULT_TOL,
    Mat3,
    eigenvalues3,
    projective_residual,
)


class InfeasibleGroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Candidate parameter table: (n, m) -> (a, b) with s = e^{ia}+e^{ib}+e^{-i(a+b)}

_SPORADIC_AB = {
    (3, 4): (angle(2, 7), angle(4, 7)),
    (3, 5): (angle(2, 5), angle(7, 15)),
    (4, 3): (angle(2, 3), angle(4, 3)),
    (5, 4): (angle(2, 15), angle(8, 15)),
    (8, 6): (angle(1, 2), angle(1, 12)),
}


def candidate_ab(n: int, m: int) -> Optional[tuple[Angle, Angle]]:
    """The (a, b) angles realizing tr(S) for a classified candidate, if any."""
    if (n, m) in _SPORADIC_AB:
        return _SPORADIC_AB[(n, m)]
    if n == m and n >= 3:
        # s = e^{2*pi*i/k}: a = 2pi/k with a + 2b an odd multiple of pi
        return angle(2, n), angle(n - 2, 2 * n)
    return None


def is_candidate(n: int, m: int) -> bool:
    return candidate_ab(n, m) is not None


def candidate_s(n: int, m: int, im_sign: int = 1) -> Cyclo:
    """Exact tr(S) for a classified candidate (n, m)."""
    ab = candidate_ab(n, m)
    if ab is None:
        raise ValueError(f"({n},{m}) is not a classified candidate")
    a, b = ab
    s = root_of_unity(a) + root_of_unity(b) + root_of_unity(-(a + b))
    return s if im_sign >= 0 else s.conj()


# ---------------------------------------------------------------------------
# Group construction


@dataclass(frozen=True)
class GroupParams:
    p: int
    rho: object  # Cyclo or mpmath.mpc
    sigma: object
    tau: object
    exact: bool


@dataclass(frozen=True)
class Group:
    params: GroupParams
    R1: Mat3
    R2: Mat3
    R3: Mat3
    H: Mat3
    S: Optional[Mat3] = None
    n: Optional[int] = None
    m: Optional[int] = None
    warning: Optional[str] = None

    @property
    def exact(self) -> bool:
        return self.params.exact

    def generators(self) -> tuple[Mat3, Mat3, Mat3]:
        return self.R1, self.R2, self.R3


def _alpha_exact(p: int) -> Cyclo:
    # sqrt(2 - 2*cos(2*pi/p)) = 2*sin(pi/p) = 2*cos(pi*(p-2)/(2p)) >= 0
    return cos_exact(angle(p - 2, 2 * p)) * 2


def build_group(p: int, rho, sigma, tau, prec: int = DEFAULT_PREC) -> Group:
    """Assemble generators and Hermitian form from free parameters.

    All of rho, sigma, tau exact (Cyclo / int / Fraction) gives an exact
    group; otherwise everything is converted to mpmath at `prec` bits.
    """
    if p < 2:
        raise ValueError("reflection order p must be >= 2")

    def as_exact(x):
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo.rational(x)
        return None

    exact_params = [as_exact(x) for x in (rho, sigma, tau)]
    if all(x is not None for x in exact_params):
        rho, sigma, tau = exact_params
        u = Cyclo.root(3 * p, 1)
        uh_bar = Cyclo.root(6 * p, 6 * p - 1)  # e^{-i*pi/(3p)}
        alpha = _alpha_exact(p)
        mi = -Cyclo.i()
        zero, ub, u2 = Cyclo.zero(), u.conj(), u * u
        b1, b2, b3 = mi * uh_bar * rho, mi * uh_bar * sigma, mi * uh_bar * tau
        r1 = Mat3([[u2, rho, -(u * tau.conj())], [zero, ub, zero], [zero, zero, ub]])
        r2 = Mat3([[ub, zero, zero], [-(u * rho.conj()), u2, sigma], [zero, zero, ub]])
        r3 = Mat3([[ub, zero, zero], [zero, ub, zero], [tau, -(u * sigma.conj()), u2]])
        h = Mat3(
            [
                [alpha, b1, b3.conj()],
                [b1.conj(), alpha, b2],
                [b3, b2.conj(), alpha],
            ]
        )
        params = GroupParams(p, rho, sigma, tau, exact=True)
        return Group(params, r1, r2, r3, h)

    with mpmath.workprec(prec):
        def as_float(x):
            if isinstance(x, Cyclo):
                return x.to_mpc(prec)
            if isinstance(x, (int, Fraction)):
                return mpmath.mpc(Fraction(x).numerator) / Fraction(x).denominator
            return mpmath.mpc(x)

        rho_f, sigma_f, tau_f = (as_float(x) for x in (rho, sigma, tau))
        u = mpmath.expjpi(mpmath.mpf(2) / (3 * p))
        uh_bar = mpmath.expjpi(mpmath.mpf(-1) / (3 * p))
        alpha = 2 * mpmath.sinpi(mpmath.mpf(1) / p)
        mi = mpmath.mpc(0, -1)
        zero, ub, u2 = mpmath.mpc(0), mpmath.conj(u), u * u
        b1, b2, b3 = mi * uh_bar * rho_f, mi * uh_bar * sigma_f, mi * uh_bar * tau_f
        r1 = Mat3([[u2, rho_f, -u * mpmath.conj(tau_f)], [zero, ub, zero], [zero, zero, ub]])
        r2 = Mat3([[ub, zero, zero], [-u * mpmath.conj(rho_f), u2, sigma_f], [zero, zero, ub]])
        r3 = Mat3([[ub, zero, zero], [zero, ub, zero], [tau_f, -u * mpmath.conj(sigma_f), u2]])
        h = Mat3(
            [
                [mpmath.mpc(alpha), b1, mpmath.conj(b3)],
                [mpmath.conj(b1), mpmath.mpc(alpha), b2],
                [b3, mpmath.conj(b2), mpmath.mpc(alpha)],
            ]
        )
        params = GroupParams(p, rho_f, sigma_f, tau_f, exact=False)
        return Group(params, r1, r2, r3, h)


def symmetry_matrix(p: int, rho, sigma, prec: int = DEFAULT_PREC) -> Mat3:
    """The extra isometry S of a symmetric group (sigma^2 = rho + conj(rho))."""
    if isinstance(rho, Cyclo) and isinstance(sigma, Cyclo):
        u = Cyclo.root(3 * p, 1)
        ub = u.conj()
        one, zero = Cyclo.one(), Cyclo.zero()
        rr = rho + rho.conj()
        return Mat3(
            [
                [rho, u * (one - rr), u * u * sigma],
                [ub, zero, zero],
                [zero, ub * sigma, -one],
            ]
        )
    with mpmath.workprec(prec):
        u = mpmath.expjpi(mpmath.mpf(2) / (3 * p))
        ub = mpmath.conj(u)
        rho_f, sigma_f = mpmath.mpc(rho), mpmath.mpc(sigma)
        rr = 2 * rho_f.real
        zero = mpmath.mpc(0)
        return Mat3(
            [
                [rho_f, u * (1 - rr), u * u * sigma_f],
                [ub, zero, zero],
                [zero, ub * sigma_f, -mpmath.mpc(1)],
            ]
        )


def build_symmetric(p: int, n: int, m: int, im_sign: int = 1, prec: int = DEFAULT_PREC) -> Group:
    """Group with braid data (n, n, m; m): |rho| = 2cos(pi/m), sigma = tau = 2cos(pi/n).

    Classified candidates get exact cyclotomic matrices; other (n, m) take
    the float path.  Raises InfeasibleGroupError when 2cos(pi/m) <
    2cos^2(pi/n), where no such rho exists.
    """
    if p < 2:
        raise ValueError("reflection order p must be >= 2")
    if n < 3 or m < 3:
        raise ValueError("n and m must be >= 3")
    with mpmath.workprec(80):
        abs_rho = 2 * mpmath.cospi(mpmath.mpf(1) / m)
        re_rho = 2 * mpmath.cospi(mpmath.mpf(1) / n) ** 2
        gap = abs_rho**2 - re_rho**2
    if gap < -mpmath.mpf("1e-20"):
        raise InfeasibleGroupError("no such symmetric group")

    if is_candidate(n, m):
        s = candidate_s(n, m, im_sign)
        rho = s + 1
        sigma = cos_exact(angle(1, n)) * 2
        g = build_group(p, rho, sigma, sigma)
        smat = symmetry_matrix(p, rho, sigma)
    else:
        with mpmath.workprec(prec):
            abs_rho = 2 * mpmath.cospi(mpmath.mpf(1) / m)
            re_rho = 2 * mpmath.cospi(mpmath.mpf(1) / n) ** 2
            im_rho = im_sign * mpmath.sqrt(max(abs_rho**2 - re_rho**2, mpmath.mpf(0)))
            rho = mpmath.mpc(re_rho, im_rho)
            sigma = 2 * mpmath.cospi(mpmath.mpf(1) / n)
            g = build_group(p, rho, sigma, sigma, prec=prec)
            smat = symmetry_matrix(p, rho, sigma, prec=prec)
    warning = None
    from .linalg import hermitian_signature

    sig = hermitian_signature(g.H, prec=prec)
    if sig.verdict != "(2,1)":
        warning = f"Hermitian form is {sig.verdict}, not (2,1)"
    return Group(g.params, g.R1, g.R2, g.R3, g.H, S=smat, n=n, m=m, warning=warning)


# ---------------------------------------------------------------------------
# Complex reflections from polar vectors


def reflection_matrix(phi: Angle, v: Sequence[Cyclo], h: Mat3) -> Mat3:
    """Det-1 complex reflection through angle phi with polar vector v.

    Implements z -> z + (e^{i*phi}-1) <z,v>/<v,v> v, scaled by e^{-i*phi/3},
    where <z,w> = adjoint(w) H z.  Requires <v,v> > 0.
    """
    if not h.exact or not all(isinstance(x, Cyclo) for x in v):
        raise ValueError("reflection_matrix requires exact inputs")
    vconj = [x.conj() for x in v]
    # <v,v> = sum_i conj(v_i) * (H v)_i
    hv = h.apply(v)
    vv = sum((vconj[i] * hv[i] for i in range(1, 3)), vconj[0] * hv[0])
    if not vv.is_real() or vv.real_sign() <= 0:
        raise ValueError("polar vector not positive")
    e_phi = root_of_unity(phi)
    scale = root_of_unity(angle(-phi.num, 3 * phi.den))  # e^{-i*phi/3}
    factor = (e_phi - 1) * vv.inverse()
    # rank-1 update: v * (adjoint(v) H) = v * row, row_j = (H^t conj(v))_j
    row = [sum((h.rows[k][j] * vconj[k] for k in range(1, 3)), h.rows[0][j] * vconj[0]) for j in range(3)]
    entries = [
        [
            (Cyclo.one() if i == j else Cyclo.zero()) + factor * v[i] * row[j]
            for j in range(3)
        ]
        for i in range(3)
    ]
    return Mat3([[scale * x for x in r] for r in entries])


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class SymmetryReport:
    residuals: dict
    tolerance: object
    exact_square: Optional[bool]

    @property
    def passed(self) -> bool:
        ok = all(r <= self.tolerance for r in self.residuals.values())
        if self.exact_square is not None:
            ok = ok and self.exact_square
        return ok


def verify_symmetry(g: Group, tol=None, prec: int = DEFAULT_PREC) -> SymmetryReport:
    """Residuals of the symmetry relations satisfied by S.

    Checks S^2 = R1R2R3, the three S-conjugation relations, the two
    derived pair relations, and the polar-vector images.
    """
    if g.S is None:
        raise ValueError("group has no symmetry S")
    tol = DEFAULT_TOL if tol is None else tol
    with mpmath.workprec(prec):
        r1, r2, r3, s = (x.to_float(prec) for x in (g.R1, g.R2, g.R3, g.S))
        s_inv = s.inverse()
        r1_inv, r3_inv = r1.inverse(), r3.inverse()
        checks = {
            "square": (s * s, r1 * r2 * r3),
            "conj_r1": (s * r1 * s_inv, r1 * r2 * r1_inv),
            "conj_r2": (s * r2 * s_inv, r1 * r3 * r1 * r3_inv * r1_inv),
            "conj_r3": (s * r3 * s_inv, r1 * r3 * r1_inv),
            "pair_23": (s * (r2 * r3) * s_inv, r1 * r3),
            "pair_conj": (s * (r1 * r3_inv * r2 * r3) * s_inv, r1 * r2),
        }
        residuals = {k: projective_residual(a, b, prec) for k, (a, b) in checks.items()}
        # polar-vector images: S v1 = R1 v2, S v2 = R1 R3 v1, S v3 = -u R1 v3
        u = mpmath.expjpi(mpmath.mpf(2) / (3 * g.params.p))
        e = [
            (mpmath.mpc(1), mpmath.mpc(0), mpmath.mpc(0)),
            (mpmath.mpc(0), mpmath.mpc(1), mpmath.mpc(0)),
            (mpmath.mpc(0), mpmath.mpc(0), mpmath.mpc(1)),
        ]
        vec_checks = [
            (s.apply(e[0]), r1.apply(e[1])),
            (s.apply(e[1]), (r1 * r3).apply(e[0])),
            (s.apply(e[2]), tuple(-u * x for x in r1.apply(e[2]))),
        ]
        for i, (lhs, rhs) in enumerate(vec_checks, start=1):
            residuals[f"vec{i}"] = max(abs(x - y) for x, y in zip(lhs, rhs))
    exact_square = None
    if g.exact:
        exact_square = (g.S * g.S) == (g.R1 * g.R2 * g.R3)
    return SymmetryReport(residuals, tol, exact_square)


def trace_invariants(g: Group, prec: int = DEFAULT_PREC, tol=None):
    """(tr R1R2, tr R2R3, tr R1R3, tr R1R3^-1R2R3), matrix vs closed form.

    The closed forms are u(2-|rho|^2)+ub^2 and friends; disagreement
    beyond tolerance raises (internal consistency failure).
    """
    tol = DEFAULT_TOL if tol is None else tol
    with mpmath.workprec(prec):
        r1, r2, r3 = (x.to_float(prec) for x in g.generators())
        p = g.params.p
        u = mpmath.expjpi(mpmath.mpf(2) / (3 * p))
        ub2 = mpmath.conj(u) ** 2
        rho = g.params.rho.to_mpc(prec) if g.exact else mpmath.mpc(g.params.rho)
        sigma = g.params.sigma.to_mpc(prec) if g.exact else mpmath.mpc(g.params.sigma)
        tau = g.params.tau.to_mpc(prec) if g.exact else mpmath.mpc(g.params.tau)
        from_matrix = (
            (r1 * r2).trace(),
            (r2 * r3).trace(),
            (r1 * r3).trace(),
            (r1 * r3.inverse() * r2 * r3).trace(),
        )
        closed = (
            u * (2 - abs(rho) ** 2) + ub2,
            u * (2 - abs(sigma) ** 2) + ub2,
            u * (2 - abs(tau) ** 2) + ub2,
            u * (2 - abs(sigma * tau - mpmath.conj(rho)) ** 2) + ub2,
        )
        for a, b in zip(from_matrix, closed):
            if abs(a - b) > tol:
                raise RuntimeError(f"trace formula mismatch: {a} vs {b}")
        return from_matrix


def braid_length(a: Mat3, b: Mat3, max_l: int = 24, tol=None, prec: int = DEFAULT_PREC):
    """Least l <= max_l with the alternating l-fold products projectively equal.

    Returns None when no braid relation of length <= max_l is detected;
    that means "longer than max_l", not "no braiding".
    """
    if max_l < 2:
        raise ValueError("max_l must be >= 2")
    tol = DEFAULT_TOL if tol is None else tol
    with mpmath.workprec(prec):
        af, bf = a.to_float(prec), b.to_float(prec)
        lhs, rhs = af, bf  # alternating products of length l, starting a / b
        for l in range(2, max_l + 1):
            nxt_l = bf if l % 2 == 0 else af
            nxt_r = af if l % 2 == 0 else bf
            lhs, rhs = lhs * nxt_l, rhs * nxt_r
            if projective_residual(lhs, rhs, prec) <= tol:
                return l
    return None


def evaluate_word(g: Group, word: Sequence[int], prec: int = DEFAULT_PREC, use_float: bool = False) -> Mat3:
    """Left-to-right product over signed generator indices (+-1, +-2, +-3)."""
    gens = {1: g.R1, 2: g.R2, 3: g.R3}
    if use_float or not g.exact:
        with mpmath.workprec(prec):
            mats = {k: v.to_float(prec) for k, v in gens.items()}
            mats.update({-k: v.inverse() for k, v in mats.items() if k > 0})
            out = Mat3.identity(exact=False)
            for idx in word:
                out = out * mats[idx]
            return out
    mats = dict(gens)
    mats.update({-k: v.adjugate() for k, v in gens.items()})  # det = 1
    out = Mat3.identity(exact=True)
    for idx in word:
        if idx not in mats:
            raise ValueError(f"bad generator index {idx}")
        out = out * mats[idx]
    return out


def lemma_eigenvalues_residual(g: Group, tol=None, prec: int = DEFAULT_PREC):
    """Distance of the eigenvalues of R1R2 from {ub^2, -u e^{2i zeta}, -u e^{-2i zeta}}.

    zeta is defined by |rho| = 2 cos(zeta); raises when |rho| > 2 (the
    non-loxodromic hypothesis fails).
    """
    with mpmath.workprec(prec + 20):
        rho = g.params.rho.to_mpc(prec) if g.exact else mpmath.mpc(g.params.rho)
        half = abs(rho) / 2
        if half > 1 + mpmath.mpf(2) ** (-prec // 2):
            raise ValueError("lemma hypothesis violated: R1R2 is loxodromic")
        zeta = mpmath.acos(min(half, mpmath.mpf(1)))
        p = g.params.p
        u = mpmath.expjpi(mpmath.mpf(2) / (3 * p))
        predicted = [
            mpmath.conj(u) ** 2,
            -u * mpmath.exp(2j * zeta),
            -u * mpmath.exp(-2j * zeta),
        ]
        computed = eigenvalues3(g.R1 * g.R2, prec)
        # multiset match: greedy minimal assignment over 3! pairings
        import itertools

        best = None
        for perm in itertools.permutations(range(3)):
            d = max(abs(computed[i] - predicted[perm[i]]) for i in range(3))
            if best is None or d < best:
                best = d
        return best
