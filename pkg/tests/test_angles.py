import math

import numpy as np
import pytest

from minangle.angles import dissimilarity, dissimilarity_matrix, principal_angles
from minangle.basis import SubspaceBasis
from minangle.errors import AmbientDimensionMismatch, EmptyInput


def line(*coords):
    v = np.asarray(coords, dtype=float)
    return (v / np.linalg.norm(v))[:, None]


def random_orthonormal(rng, p, d):
    q, _ = np.linalg.qr(rng.standard_normal((p, d)))
    return q


E1 = line(1, 0, 0)
E2 = line(0, 1, 0)


class TestPrincipalAngles:
    def test_identical_subspaces(self):
        rng = np.random.default_rng(0)
        for d in (1, 2, 3):
            q = random_orthonormal(rng, 10, d)
            result = principal_angles(q, q)
            np.testing.assert_allclose(result.angles, 0.0, atol=1e-7)
            assert result.angles.shape == (d,)

    def test_orthogonal_lines(self):
        result = principal_angles(E1, E2)
        np.testing.assert_allclose(result.angles, [math.pi / 2], atol=1e-12)

    def test_analytic_rotation(self):
        alpha = 0.3
        rotated = line(math.cos(alpha), math.sin(alpha), 0.0)
        result = principal_angles(E1, rotated)
        assert result.angles[0] == pytest.approx(alpha, abs=1e-12)

    def test_sorted_and_bounded(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            qa = random_orthonormal(rng, 12, int(rng.integers(1, 5)))
            qb = random_orthonormal(rng, 12, int(rng.integers(1, 5)))
            result = principal_angles(qa, qb)
            assert np.all(np.diff(result.angles) >= -1e-12)
            assert np.all(result.angles >= 0.0)
            assert np.all(result.angles <= math.pi / 2 + 1e-12)
            assert np.all(np.diff(result.cosines) <= 1e-12)
            assert np.all((result.cosines >= 0.0) & (result.cosines <= 1.0))

    def test_length_is_smaller_dimension(self):
        rng = np.random.default_rng(2)
        qa = random_orthonormal(rng, 9, 2)
        qb = random_orthonormal(rng, 9, 4)
        assert principal_angles(qa, qb).angles.shape == (2,)
        assert principal_angles(qb, qa).angles.shape == (2,)

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientDimensionMismatch):
            principal_angles(np.eye(3)[:, :1], np.eye(4)[:, :1])

    def test_clamping_survives_non_orthonormal_noise(self):
        # a basis off by one ulp can push the singular value above 1
        noisy = np.array([[1.0 + 5e-16], [0.0], [0.0]])
        result = principal_angles(noisy, noisy)
        assert np.all(np.isfinite(result.angles))
        assert result.angles[0] == pytest.approx(0.0, abs=1e-7)

    def test_accepts_subspace_basis(self):
        basis = SubspaceBasis(vectors=E1, component_id=0)
        assert principal_angles(basis, basis).angles[0] == pytest.approx(0.0, abs=1e-12)


class TestDissimilarity:
    def test_identical_equal_dims(self):
        rng = np.random.default_rng(3)
        for d in (1, 3):
            q = random_orthonormal(rng, 8, d)
            assert dissimilarity(q, q) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_lines(self):
        assert dissimilarity(E1, E2) == pytest.approx(1.0, abs=1e-12)

    def test_line_inside_plane(self):
        plane = np.eye(3)[:, :2]
        assert dissimilarity(E1, plane) == pytest.approx(0.5, abs=1e-12)
        assert dissimilarity(plane, E1) == pytest.approx(0.5, abs=1e-12)

    def test_rotation_formula(self):
        for alpha in np.linspace(0.01, math.pi / 2 - 0.01, 25):
            rotated = line(math.cos(alpha), math.sin(alpha), 0.0)
            assert dissimilarity(E1, rotated) == pytest.approx(1.0 - math.cos(alpha), abs=1e-12)

    def test_monotone_in_rotation_angle(self):
        values = [
            dissimilarity(E1, line(math.cos(a), math.sin(a), 0.0))
            for a in np.linspace(0.0, math.pi / 2, 30)
        ]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    def test_basis_invariance(self):
        rng = np.random.default_rng(4)
        for _ in range(15):
            qa = random_orthonormal(rng, 10, 3)
            qb = random_orthonormal(rng, 10, 2)
            base = dissimilarity(qa, qb)
            rot_a = random_orthonormal(rng, 3, 3)
            rot_b = random_orthonormal(rng, 2, 2)
            assert dissimilarity(qa @ rot_a, qb @ rot_b) == pytest.approx(base, abs=1e-10)

    def test_range_and_symmetry_randomized(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            qa = random_orthonormal(rng, 11, int(rng.integers(1, 5)))
            qb = random_orthonormal(rng, 11, int(rng.integers(1, 5)))
            d_ab = dissimilarity(qa, qb)
            d_ba = dissimilarity(qb, qa)
            assert 0.0 <= d_ab <= 1.0
            assert d_ab == pytest.approx(d_ba, abs=1e-12)


class TestDissimilarityMatrix:
    def bases(self, *arrays):
        return [SubspaceBasis(vectors=a, component_id=i) for i, a in enumerate(arrays)]

    def test_identical_pair(self):
        result = dissimilarity_matrix(self.bases(E1, E1))
        np.testing.assert_allclose(result.values, [[0.0, 0.0], [0.0, 0.0]], atol=1e-12)

    def test_orthogonal_pattern(self):
        result = dissimilarity_matrix(self.bases(E1, E2, E1)).values
        assert result[0, 1] == pytest.approx(1.0, abs=1e-12)
        assert result[1, 2] == pytest.approx(1.0, abs=1e-12)
        assert result[0, 2] == pytest.approx(0.0, abs=1e-12)

    def test_matches_pairwise_calls(self):
        rng = np.random.default_rng(6)
        arrays = [random_orthonormal(rng, 14, int(rng.integers(1, 5))) for _ in range(7)]
        result = dissimilarity_matrix(self.bases(*arrays)).values
        for i in range(7):
            for j in range(7):
                expected = 0.0 if i == j else dissimilarity(arrays[i], arrays[j])
                assert result[i, j] == pytest.approx(expected, abs=1e-10)

    def test_matrix_invariants(self):
        rng = np.random.default_rng(7)
        arrays = [random_orthonormal(rng, 9, int(rng.integers(1, 4))) for _ in range(6)]
        result = dissimilarity_matrix(self.bases(*arrays)).values
        assert np.all(result >= 0.0) and np.all(result <= 1.0)
        np.testing.assert_allclose(result, result.T, atol=1e-15)
        np.testing.assert_allclose(np.diag(result), 0.0, atol=1e-15)

    def test_too_few_bases(self):
        with pytest.raises(EmptyInput):
            dissimilarity_matrix(self.bases(E1))

    def test_mixed_ambient_rejected(self):
        a = SubspaceBasis(vectors=np.eye(3)[:, :1])
        b = SubspaceBasis(vectors=np.eye(4)[:, :1])
        with pytest.raises(AmbientDimensionMismatch):
            dissimilarity_matrix([a, b])
