import math
import time

import numpy as np
import pytest

from conftest import poly_mul_truncated, richardson_derivative
from jetsolve import taylor
from jetsolve.errors import DomainError, ZeroPrimal
from jetsolve.taylor import TaylorBundle, derivative, reciprocal, seed


def coeffs(b):
    return np.asarray(b.coeffs, dtype=float)


class TestSeed:
    def test_scalar(self):
        assert seed(1.0, 1.0, 2).coeffs == (1.0, 1.0, 0.0)

    def test_higher_order(self):
        assert seed(3.3, 1.0, 5).coeffs == (3.3, 1.0, 0.0, 0.0, 0.0, 0.0)

    def test_vector(self):
        b = seed(np.array([1.0, 2.0]), np.array([0.5, 0.5]), 2)
        np.testing.assert_array_equal(b.coeffs[0], [1.0, 2.0])
        np.testing.assert_array_equal(b.coeffs[1], [0.5, 0.5])
        np.testing.assert_array_equal(b.coeffs[2], [0.0, 0.0])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            seed(np.zeros(2), np.zeros(3), 1)

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            seed(1.0, 1.0, 0)


class TestMul:
    def test_one_plus_t_squared(self):
        b = TaylorBundle((1.0, 1.0, 0.0))
        np.testing.assert_allclose(coeffs(b * b), [1.0, 2.0, 1.0])

    def test_constant_scaling(self):
        a = TaylorBundle((2.0, 0.0, 0.0))
        b = TaylorBundle((0.0, 1.0, 0.0))
        np.testing.assert_allclose(coeffs(a * b), [0.0, 2.0, 0.0])

    def test_against_convolution_oracle(self):
        a = (1.0, 1.0, 1.0)
        b = (1.0, -1.0, 1.0)
        expected = poly_mul_truncated(a, b, 2)
        np.testing.assert_allclose(expected, [1.0, 0.0, 1.0])  # frozen oracle value
        got = coeffs(TaylorBundle(a) * TaylorBundle(b))
        np.testing.assert_allclose(got, expected)

    def test_random_against_convolution_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            p = int(rng.integers(1, 9))
            a = rng.uniform(-2, 2, p + 1)
            b = rng.uniform(-2, 2, p + 1)
            got = coeffs(TaylorBundle(a) * TaylorBundle(b))
            np.testing.assert_allclose(got, poly_mul_truncated(a, b, p), atol=1e-13)


class TestReciprocal:
    def test_geometric_series(self):
        got = reciprocal(TaylorBundle((1.0, 1.0, 0.0, 0.0)))
        np.testing.assert_allclose(coeffs(got), [1.0, -1.0, 1.0, -1.0])

    def test_shifted(self):
        got = reciprocal(TaylorBundle((2.0, 1.0, 0.0)))
        np.testing.assert_allclose(coeffs(got), [0.5, -0.25, 0.125])

    def test_multiply_back_identity(self):
        f = TaylorBundle((1.0, 0.0, 1.0))
        g = reciprocal(f)
        np.testing.assert_allclose(coeffs(g), [1.0, 0.0, -1.0])
        np.testing.assert_allclose(coeffs(f * g), [1.0, 0.0, 0.0], atol=1e-15)

    def test_zero_primal_raises(self):
        with pytest.raises(ZeroPrimal):
            reciprocal(TaylorBundle((0.0, 1.0)))


class TestElementary:
    def test_exp_series(self):
        got = taylor.exp(seed(0.0, 1.0, 3))
        np.testing.assert_allclose(coeffs(got), [1.0, 1.0, 0.5, 1.0 / 6.0])

    def test_sin_cos_series(self):
        np.testing.assert_allclose(coeffs(taylor.sin(seed(0.0, 1.0, 2))), [0, 1, 0])
        np.testing.assert_allclose(coeffs(taylor.cos(seed(0.0, 1.0, 2))), [1, 0, -0.5])

    def test_log_series(self):
        got = taylor.log(seed(1.0, 1.0, 2))
        np.testing.assert_allclose(coeffs(got), [0.0, 1.0, -0.5])

    def test_log_domain(self):
        with pytest.raises(DomainError):
            taylor.log(seed(-1.0, 1.0, 2))

    def test_sqrt_domain(self):
        with pytest.raises(DomainError):
            taylor.sqrt(seed(-1.0, 1.0, 2))

    def test_rpow(self):
        b = 2.0 ** seed(3.0, 1.0, 2)
        assert b.coeffs[0] == pytest.approx(8.0)
        assert derivative(b, 1) == pytest.approx(8.0 * math.log(2.0))

    @pytest.mark.parametrize(
        "name,fn,domain",
        [
            # third field: fraction of the distance to the nearest singularity
            # used as the finite-difference step (None = absolute step)
            ("exp", taylor.exp, (-1.5, 1.5)),
            ("log", taylor.log, (0.5, 3.0)),
            ("sin", taylor.sin, (-2.0, 2.0)),
            ("cos", taylor.cos, (-2.0, 2.0)),
            ("sqrt", taylor.sqrt, (0.5, 3.0)),
            ("pow2.5", lambda b: taylor.power(b, 2.5), (0.5, 3.0)),
            ("recip", reciprocal, (0.5, 3.0)),
        ],
    )
    def test_finite_difference_oracle(self, name, fn, domain):
        plain = {
            "exp": math.exp,
            "log": math.log,
            "sin": math.sin,
            "cos": math.cos,
            "sqrt": math.sqrt,
            "pow2.5": lambda x: x ** 2.5,
            "recip": lambda x: 1.0 / x,
        }[name]
        singular_at_zero = name in ("log", "sqrt", "pow2.5", "recip")
        rng = np.random.default_rng(11)
        for _ in range(10):
            x = float(rng.uniform(*domain))
            bundle = fn(seed(x, 1.0, 4))
            for k in range(1, 5):
                # keep the whole stencil well inside the domain
                h = 0.05 * x if singular_at_zero else 0.05
                expected = richardson_derivative(plain, x, k, h=h)
                got = derivative(bundle, k)
                assert got == pytest.approx(expected, rel=1e-6, abs=1e-8), (name, x, k)


class TestDerivative:
    def test_factorial_scaling(self):
        assert derivative(TaylorBundle((1.0, 1.0, 0.5)), 2) == 1.0

    def test_primal(self):
        assert derivative(TaylorBundle((5.0, 0.0, 0.0)), 0) == 5.0

    def test_exp_third(self):
        assert derivative(taylor.exp(seed(0.0, 1.0, 3)), 3) == pytest.approx(1.0)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            derivative(TaylorBundle((1.0, 1.0)), 2)


class TestRingAxioms:
    def _random_bundle(self, rng, p):
        return TaylorBundle(rng.uniform(-2, 2, p + 1))

    def test_axioms(self):
        rng = np.random.default_rng(42)
        for _ in range(400):
            p = int(rng.integers(1, 7))
            a = self._random_bundle(rng, p)
            b = self._random_bundle(rng, p)
            c = self._random_bundle(rng, p)
            comm = coeffs(a * b) - coeffs(b * a)
            assoc = coeffs((a * b) * c) - coeffs(a * (b * c))
            dist = coeffs(a * (b + c)) - (coeffs(a * b) + coeffs(a * c))
            scale = max(1.0, np.max(np.abs(coeffs(a * b))), np.max(np.abs(coeffs(a * c))))
            assert np.max(np.abs(comm)) <= 1e-13 * scale
            assert np.max(np.abs(assoc)) <= 1e-13 * scale ** 2
            assert np.max(np.abs(dist)) <= 1e-13 * scale

    def test_reciprocal_inverse(self):
        rng = np.random.default_rng(43)
        identity_checked = 0
        while identity_checked < 400:
            p = int(rng.integers(1, 9))
            c = rng.uniform(-2, 2, p + 1)
            if abs(c[0]) < 0.1:
                continue
            f = TaylorBundle(c)
            g = reciprocal(f)
            prod = coeffs(f * g)
            target = np.zeros(p + 1)
            target[0] = 1.0
            # 1e-12 relative to the magnitude of the convolution terms
            ga = np.abs(coeffs(g))
            fa = np.abs(c)
            for k in range(p + 1):
                scale = max(1.0, sum(fa[j] * ga[k - j] for j in range(k + 1)))
                assert abs(prod[k] - target[k]) <= 1e-12 * scale
            identity_checked += 1


class TestCostScaling:
    def test_quadratic_bound_on_univariate_suite(self):
        from jetsolve.problems import univariate_suite

        cases = univariate_suite()

        def eval_all(p):
            for case in cases:
                case.residual(seed(case.x0 + 0.1, 1.0, p))

        def timed(p, reps=200):
            eval_all(p)  # warm up
            best = math.inf
            for _ in range(5):
                t0 = time.perf_counter()
                for _ in range(reps):
                    eval_all(p)
                best = min(best, time.perf_counter() - t0)
            return best

        t1 = timed(1)
        for p in range(2, 9):
            # generous constant: only the asymptotic trend matters
            assert timed(p) <= 12.0 * p ** 2 * t1, f"order {p} cost blew past p^2"
