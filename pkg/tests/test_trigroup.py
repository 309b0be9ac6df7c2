import mpmath
import pytest

from chtri.exact import Cyclo, angle, cos_exact, root_of_unity
from chtri.linalg import Mat3, form_residual, hermitian_signature, projective_equal
from chtri.trigroup import (
    InfeasibleGroupError,
    braid_length,
    build_group,
    build_symmetric,
    candidate_ab,
    candidate_s,
    evaluate_word,
    is_candidate,
    lemma_eigenvalues_residual,
    reflection_matrix,
    symmetry_matrix,
    trace_invariants,
    verify_symmetry,
)

SPORADICS = [(3, 4), (3, 5), (4, 3), (5, 4), (8, 6)]


class TestCandidates:
    def test_candidate_table(self):
        for n, m in SPORADICS:
            assert is_candidate(n, m)
        for k in range(3, 13):
            assert is_candidate(k, k)
        assert not is_candidate(3, 6)
        assert not is_candidate(7, 5)

    def test_candidate_s_values(self):
        # (3,4): s = (-1 + i sqrt(7))/2, so (2s+1)^2 = -7
        s = candidate_s(3, 4)
        t = s * 2 + 1
        assert (t * t + 7).is_zero()
        # (4,3): s = 0
        assert candidate_s(4, 3).is_zero()
        # diagonal: s = e^{2 pi i/k}
        for k in (3, 5, 8):
            assert (candidate_s(k, k) - root_of_unity(angle(2, k))).is_zero()

    def test_im_sign_conjugates(self):
        s = candidate_s(3, 5)
        assert (candidate_s(3, 5, -1) - s.conj()).is_zero()

    def test_rho_modulus(self):
        for n, m in SPORADICS:
            rho = candidate_s(n, m) + 1
            target = cos_exact(angle(1, m)) * 2
            assert (rho.abs2() - target * target).is_zero()


class TestBuild:
    @pytest.mark.parametrize("n,m", SPORADICS + [(3, 3), (4, 4), (6, 6)])
    def test_exact_group_structure(self, n, m):
        g = build_symmetric(4, n, m)
        assert g.exact
        u_cubed = root_of_unity(angle(2, 3))  # e^{2 pi i/3}
        for r in g.generators():
            # det = 1 exactly
            assert (r.det() - 1).is_zero()
            # R^p = e^{-2 pi i/3} I
            rp = r ** g.params.p
            target = Mat3([[u_cubed.conj() if i == j else Cyclo.zero()
                            for j in range(3)] for i in range(3)])
            assert (rp - target).is_zero_exact()
            # R preserves H: adjoint(R) H R = H exactly
            assert (r.adjoint() * g.H * r - g.H).is_zero_exact()
        # S preserves H and det(S) = 1
        assert (g.S.det() - 1).is_zero()
        assert (g.S.adjoint() * g.H * g.S - g.H).is_zero_exact()
        # tr(S) = rho - 1
        assert (g.S.trace() - (g.params.rho - 1)).is_zero()

    def test_infeasible(self):
        with pytest.raises(InfeasibleGroupError, match="no such symmetric group"):
            build_symmetric(3, 6, 3)

    def test_float_path(self):
        g = build_symmetric(4, 5, 6, prec=128)  # not a classified candidate
        assert not g.exact
        rep = verify_symmetry(g, prec=128)
        assert rep.passed

    def test_build_group_free_params(self):
        g = build_group(3, Cyclo.one(), Cyclo.one(), Cyclo.one())
        assert g.exact
        for r in g.generators():
            assert (r.det() - 1).is_zero()

    def test_warning_flag(self):
        g = build_symmetric(2, 4, 3)  # positive definite form
        assert g.warning is not None
        assert hermitian_signature(g.H).verdict == "(3,0)"
        assert build_symmetric(5, 4, 3).warning is None


class TestSymmetry:
    @pytest.mark.parametrize("n,m", SPORADICS)
    @pytest.mark.parametrize("p", [2, 5])
    def test_relations(self, n, m, p):
        g = build_symmetric(p, n, m)
        rep = verify_symmetry(g)
        assert rep.exact_square is True
        assert all(r <= mpmath.mpf("1e-30") for r in rep.residuals.values())

    def test_trace_invariants(self):
        g = build_symmetric(4, 3, 4)
        tr12, tr23, tr13, tr_conj = trace_invariants(g)
        with mpmath.workprec(256):
            # oracle: u(2 - |rho|^2) + ubar^2 with u = e^{2 pi i/(3 p)}
            u = mpmath.expjpi(mpmath.mpf(2) / 12)
            want = u * (2 - 2) + mpmath.conj(u) ** 2  # |rho|^2 = 2 for m = 4
            assert abs(tr12 - want) < 1e-60


class TestBraids:
    @pytest.mark.parametrize("n,m", SPORADICS)
    def test_braid_lengths(self, n, m):
        g = build_symmetric(5, n, m)
        with mpmath.workprec(256):
            r1, r2, r3 = (x.to_float(256) for x in g.generators())
            assert braid_length(r1, r3) == n
            assert braid_length(r2, r3) == n
            assert braid_length(r1, r2) == m
            conj = r3.inverse() * r2 * r3
            assert braid_length(r1, conj) == m

    def test_no_braid_returns_none(self):
        g = build_symmetric(4, 5, 6, prec=192)
        assert braid_length(g.R1, g.R2, max_l=4, prec=192) is None


class TestWords:
    def test_inverse_word(self):
        g = build_symmetric(4, 4, 3)
        w = evaluate_word(g, [1, -1, 2, -2, 3, -3])
        assert (w - Mat3.identity(exact=True)).is_zero_exact()

    def test_word_matches_product(self):
        g = build_symmetric(4, 4, 3)
        assert ((evaluate_word(g, [1, 2]) - g.R1 * g.R2)).is_zero_exact()

    def test_braid4_word_identity(self):
        # br(R1,R2) = 4 makes R2^-1 R1R2R1R2 R1^-1 projectively equal R1R2
        g = build_symmetric(5, 5, 4)
        lhs = evaluate_word(g, [-2, 1, 2, 1, 2, -1], use_float=True)
        rhs = evaluate_word(g, [1, 2], use_float=True)
        assert projective_equal(lhs, rhs, tol=mpmath.mpf("1e-30"))


class TestEigenvalueLemma:
    @pytest.mark.parametrize("n,m", SPORADICS + [(4, 4), (6, 6)])
    def test_residual_small(self, n, m):
        g = build_symmetric(3, n, m)
        assert lemma_eigenvalues_residual(g) <= mpmath.mpf("1e-30")


class TestReflection:
    def test_reproduces_generators(self):
        g = build_symmetric(4, 4, 3)
        phi = angle(2, 4)  # rotation angle 2 pi/p
        basis = [
            (Cyclo.one(), Cyclo.zero(), Cyclo.zero()),
            (Cyclo.zero(), Cyclo.one(), Cyclo.zero()),
            (Cyclo.zero(), Cyclo.zero(), Cyclo.one()),
        ]
        for v, r in zip(basis, g.generators()):
            assert (reflection_matrix(phi, v, g.H) - r).is_zero_exact()

    def test_nonpositive_vector_rejected(self):
        g = build_symmetric(5, 4, 3)
        # e1 - e2 pairs negatively with itself under this H at p = 5
        v = (Cyclo.one(), -Cyclo.one(), Cyclo.zero())
        hv = g.H.apply(v)
        norm = sum((v[i].conj() * hv[i] for i in range(1, 3)), v[0].conj() * hv[0])
        if norm.is_real() and norm.real_sign() <= 0:
            with pytest.raises(ValueError, match="polar vector not positive"):
                reflection_matrix(angle(2, 5), v, g.H)
