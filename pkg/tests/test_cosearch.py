import json
import random
from fractions import Fraction

import pytest

from chtri.exact import angle
from chtri.cosearch import (
    COSINE_SUM_LABELS,
    TRACE_TABLE_LABELS,
    canonicalize_ab,
    factorization_residual,
    half_angle_residuals,
    main_residual,
    minor_residual,
    cosine_sum_residual,
    orbit,
    parameter_feasible,
    results_to_json,
    search,
    trace_s,
    trace_table_residual,
)

# known exact solutions: (n, m) -> (a, b)
KNOWN = {
    (3, 4): (angle(2, 7), angle(4, 7)),
    (3, 5): (angle(2, 5), angle(7, 15)),
    (4, 3): (angle(2, 3), angle(4, 3)),
    (5, 4): (angle(2, 15), angle(8, 15)),
    (8, 6): (angle(1, 2), angle(1, 12)),
    (6, 6): (angle(1, 3), angle(1, 3)),
}


class TestResiduals:
    @pytest.mark.parametrize("nm", sorted(KNOWN))
    def test_known_solutions_exact(self, nm):
        n, m = nm
        a, b = KNOWN[nm]
        assert minor_residual(n, a, b).is_zero()
        assert main_residual(m, n, a, b).is_zero()

    def test_non_solution_nonzero(self):
        assert not minor_residual(3, angle(1, 5), angle(1, 5)).is_zero()
        assert not main_residual(4, 4, angle(1, 9), angle(1, 7)).is_zero()

    def test_trace_s_conjugation(self):
        a, b = angle(2, 7), angle(4, 7)
        s = trace_s(a, b)
        assert (trace_s(-a, -b) - s.conj()).is_zero()

    def test_feasibility(self):
        assert parameter_feasible(4, 3)  # equality case
        assert parameter_feasible(3, 4)
        assert not parameter_feasible(6, 3)


class TestOrbit:
    def test_orbit_size(self):
        a, b = angle(2, 7), angle(4, 7)
        assert len(orbit(a, b)) <= 36
        assert (a.frac, b.frac) in orbit(a, b)

    def test_canonical_invariant(self):
        rng = random.Random(11)
        for _ in range(10):
            a = angle(rng.randint(0, 13), 7)
            b = angle(rng.randint(0, 17), 9)
            key = canonicalize_ab(a, b)
            for x, y in list(orbit(a, b))[:8]:
                ax = angle(x.numerator, x.denominator)
                by = angle(y.numerator, y.denominator)
                assert canonicalize_ab(ax, by) == key

    def test_trace_s_orbit_values(self):
        # every orbit member gives s up to cube-root-of-unity times s or conj(s)
        from chtri.exact import Cyclo, root_of_unity

        a, b = angle(2, 5), angle(7, 15)
        s = trace_s(a, b)
        omega = root_of_unity(angle(2, 3))
        allowed = []
        for j in range(3):
            w = omega ** j if j else Cyclo.one()
            allowed.extend([s * w, s.conj() * w])
        for x, y in orbit(a, b):
            sx = trace_s(angle(x.numerator, x.denominator), angle(y.numerator, y.denominator))
            assert any((sx - t).is_zero() for t in allowed)


class TestSearch:
    def test_small_grid(self):
        # frozen output of the denominator-12 grid with m capped at 7
        res = search(den_max=12, n_max=12, m_max=7)
        got = {(c.n, c.m) for c in res if c.exact_confirmed}
        assert got == {(3, 3), (3, 4), (4, 3), (4, 4), (5, 5), (6, 6), (8, 6)}
        assert all(c.parameter_feasible for c in res)

    def test_json_schema(self):
        res = search(den_max=8, n_max=6, m_max=6)
        doc = json.loads(results_to_json(res))
        assert doc
        row = doc[0]
        assert set(row) == {"n", "m", "a", "b", "s", "exact_confirmed", "parameter_feasible"}
        assert set(row["a"]) == {"num", "den"}
        # 50 significant digits in the decimal strings
        assert len(row["s"]["re"].replace("-", "").replace(".", "").lstrip("0")) >= 45

    def test_workers(self):
        seq = search(den_max=10, n_max=6, m_max=6)
        par = search(den_max=10, n_max=6, m_max=6, workers=2)
        assert [(c.n, c.m, c.a, c.b) for c in seq] == [(c.n, c.m, c.a, c.b) for c in par]


class TestIdentities:
    def test_all_labels_present(self):
        assert len(COSINE_SUM_LABELS) == 15
        assert len(TRACE_TABLE_LABELS) == 13

    @pytest.mark.parametrize("label", COSINE_SUM_LABELS)
    def test_cosine_sums_exact(self, label):
        rng = random.Random(17)
        if label in ("a", "b", "c"):
            for _ in range(5):
                den = rng.randint(1, 60)
                phi = angle(rng.randint(0, 2 * den - 1), den)
                assert cosine_sum_residual(label, phi).is_zero()
        else:
            assert cosine_sum_residual(label).is_zero()

    @pytest.mark.parametrize("label", TRACE_TABLE_LABELS)
    def test_trace_table_exact(self, label):
        rng = random.Random(19)
        if label in ("i", "ii"):
            for _ in range(5):
                den = rng.randint(1, 60)
                psi = angle(rng.randint(0, 2 * den - 1), den)
                assert trace_table_residual(label, psi).is_zero()
        else:
            assert trace_table_residual(label).is_zero()

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            cosine_sum_residual("zz")

    def test_factorization_random(self):
        rng = random.Random(23)
        for _ in range(10):
            da, db = rng.randint(1, 24), rng.randint(1, 24)
            a = angle(rng.randint(0, 2 * da - 1), da)
            b = angle(rng.randint(0, 2 * db - 1), db)
            assert factorization_residual(a, b).is_zero()
            for r in half_angle_residuals(a, b):
                assert r.is_zero()
