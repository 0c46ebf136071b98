import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimerlab.errors import PolynomialError
from dimerlab.laurent import (
    ONE, W, Z, ZERO, LaurentPoly2, det_expansion, det_interpolation, evaluate_matrix, format_poly,
    lp_arith, lp_det, lp_eval, lp_normalize, parse_poly, poly_from_json, poly_to_json,
)

WEAVE_MATRIX = [[-1 - Z**-1, 1 + W], [1 + W**-1, 1 + Z]]
TRIAXIAL_MATRIX = [[ONE, Z, W], [ONE, ONE, ONE], [Z**-1 - W**-1, W**-1 - 1, 1 - Z**-1]]
P_WEAVE = -(4 + Z + Z**-1 + W + W**-1)
P_TRIAXIAL = 6 - (W**-1 + W + Z**-1 + Z + W * Z**-1 + Z * W**-1)

polys = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(-5, 5), max_size=5
).map(LaurentPoly2)


def random_matrix(rng, k):
    def entry():
        terms = {(int(rng.integers(-2, 3)), int(rng.integers(-2, 3))): int(rng.integers(-3, 4))
                 for _ in range(int(rng.integers(0, 3)))}
        return LaurentPoly2(terms)

    return [[entry() for _ in range(k)] for _ in range(k)]


class TestArithmetic:
    def test_cancellation(self):
        assert lp_arith("add", Z + W, -W) == Z

    def test_expansion(self):
        assert lp_arith("mul", 1 + Z, 1 + Z**-1) == 2 + Z + Z**-1

    def test_mul_by_zero_is_empty(self):
        p = lp_arith("mul", Z + 3, 0)
        assert p == ZERO and p.terms == {}

    def test_neg_and_scale(self):
        assert lp_arith("neg", Z) == -Z
        assert lp_arith("scale", Z + W, 3) == 3 * Z + 3 * W
        with pytest.raises(PolynomialError):
            lp_arith("scale", Z, Z)
        with pytest.raises(PolynomialError):
            lp_arith("div", Z, Z)

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p
        assert p - p == ZERO

    def test_hash_consistent_with_equality(self):
        assert hash(Z + W) == hash(W + Z)
        assert len({Z + W, W + Z}) == 1


class TestDeterminant:
    def test_weave_matrix(self):
        for method in ("expansion", "interpolation"):
            assert lp_det(WEAVE_MATRIX, method=method) == P_WEAVE

    def test_triaxial_matrix(self):
        for method in ("expansion", "interpolation"):
            assert lp_det(TRIAXIAL_MATRIX, method=method) == P_TRIAXIAL

    @pytest.mark.parametrize("k", [1, 3, 9, 12])
    def test_identity(self, k):
        eye = [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]
        assert lp_det(eye) == ONE

    def test_paths_agree_on_random_matrices(self, rng):
        for _ in range(30):
            M = random_matrix(rng, int(rng.integers(1, 6)))
            assert det_expansion(M) == det_interpolation(M)

    def test_eval_matches_numeric_det(self, rng):
        for _ in range(20):
            M = random_matrix(rng, int(rng.integers(1, 6)))
            z, w = np.exp(2j * np.pi * rng.random(2))
            exact = lp_eval(lp_det(M), z, w)
            numeric = np.linalg.det(evaluate_matrix(M, z, w))
            assert abs(exact - numeric) <= 1e-9 * max(1.0, abs(numeric))

    def test_large_matrix_uses_interpolation(self, rng):
        M = random_matrix(rng, 9)
        assert lp_det(M) == det_interpolation(M)

    def test_non_square_rejected(self):
        with pytest.raises((PolynomialError, ValueError)):
            lp_det([[ONE, Z]])


class TestEvaluation:
    def test_known_values(self):
        assert lp_eval(P_WEAVE, 1, 1) == -8
        assert lp_eval(P_WEAVE, -1, -1) == 0
        assert lp_eval(P_TRIAXIAL, 1, 1) == 0

    def test_zero_argument(self):
        with pytest.raises(PolynomialError):
            lp_eval(Z, 0, 1)


class TestNormalize:
    def test_weave(self):
        q = lp_normalize(P_WEAVE)
        assert q == (Z * W * (4 + Z + Z**-1 + W + W**-1))
        assert q.exponent_range(0)[0] == 0 and q.exponent_range(1)[0] == 0

    def test_monomial(self):
        assert lp_normalize(Z**5) == ONE
        assert lp_normalize(-3 * Z * W**-2) == 3 * ONE

    def test_zero(self):
        with pytest.raises(PolynomialError):
            lp_normalize(ZERO)

    @settings(max_examples=60, deadline=None)
    @given(polys)
    def test_idempotent(self, p):
        if p.is_zero():
            return
        q = lp_normalize(p)
        assert lp_normalize(q) == q
        assert next(iter(q.items()))[1] > 0


class TestText:
    def test_format_lexicographic(self):
        assert format_poly(P_WEAVE) == "-z^-1 - w^-1 - 4 - w - z"

    def test_parse_grammar_example(self):
        p = parse_poly("6 - z - z^-1 - w - w^-1 - z*w^-1 - z^-1*w")
        assert p == P_TRIAXIAL

    def test_parse_wrapped_negation(self):
        assert parse_poly("-(4 + z + z^-1 + w + w^-1)") == P_WEAVE

    @settings(max_examples=60, deadline=None)
    @given(polys)
    def test_round_trip(self, p):
        assert parse_poly(format_poly(p)) == p
        assert poly_from_json(poly_to_json(p)) == p

    @pytest.mark.parametrize("bad", ["", "z^", "3 + + z", "x + 1", "z^1.5"])
    def test_parse_errors(self, bad):
        with pytest.raises(PolynomialError):
            parse_poly(bad)
