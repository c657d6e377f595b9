import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from factories import random_plane_bits
from utils.bitplane import Bitplane, invert_plane
from utils.errors import CBSViolationError, DomainError, ShapeError
from utils.filters import KernelSpec, majority_oracle, mean_filter, qbmf, qbmf_quantum
from utils.image_io import GrayImage
from utils.qsim import QuantumPlane, c2q_plane, q2c_plane

K3 = KernelSpec(3)


def random_planes(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for i in range(count):
        w = (3, 5, 7)[i % 3]
        rows, cols = (int(v) for v in rng.integers(w, 65, size=2))
        yield Bitplane(random_plane_bits(rng, rows, cols, p_one=rng.uniform(0.2, 0.8))), KernelSpec(w)


class TestKernelSpec:
    def test_threshold(self):
        assert (K3.h, K3.margin) == (5, 1)
        assert KernelSpec(5).h == 13
        assert KernelSpec(7).h == 25

    @pytest.mark.parametrize('w', [1, 2, 4, 0, -3])
    def test_rejects_bad_windows(self, w):
        with pytest.raises(DomainError):
            KernelSpec(w)


class TestQbmf:
    def test_all_ones_is_fixed(self):
        ones = Bitplane(np.ones((5, 5), dtype=np.uint8))
        assert qbmf(ones, K3) == ones

    def test_isolated_one_is_removed(self):
        bits = np.zeros((5, 5), dtype=np.uint8)
        bits[2, 2] = 1
        assert qbmf(Bitplane(bits), K3) == Bitplane(np.zeros((5, 5)))

    def test_hole_is_filled(self):
        p = Bitplane([[1, 1, 1], [1, 0, 1], [1, 1, 1]])
        assert qbmf(p, K3) == Bitplane(np.ones((3, 3)))

    def test_plane_smaller_than_window(self):
        with pytest.raises(ShapeError):
            qbmf(Bitplane(np.ones((2, 5))), K3)

    def test_reads_input_only(self):
        p = Bitplane([[1, 1, 1, 0, 0],
                      [1, 1, 0, 0, 0],
                      [1, 1, 1, 0, 0]])
        assert qbmf(p, K3) == majority_oracle(p, K3)
        assert qbmf(p, K3).bits.tolist() == [[1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [1, 1, 1, 0, 0]]

    def test_borders_are_copied(self, np_rng):
        for w in (3, 5):
            k = KernelSpec(w)
            p = Bitplane(random_plane_bits(np_rng, 12, 15))
            out = qbmf(p, k).bits
            m = k.margin
            assert np.array_equal(out[:m], p.bits[:m])
            assert np.array_equal(out[-m:], p.bits[-m:])
            assert np.array_equal(out[:, :m], p.bits[:, :m])
            assert np.array_equal(out[:, -m:], p.bits[:, -m:])

    def test_matches_oracle(self):
        start = time.perf_counter()
        for p, k in random_planes(200, seed=8):
            assert qbmf(p, k) == majority_oracle(p, k)
        assert time.perf_counter() - start < 10.0

    def test_oracle_edge_cases(self):
        zeros = Bitplane(np.zeros((6, 6)))
        assert majority_oracle(zeros, K3) == zeros
        checker = Bitplane(np.indices((8, 8)).sum(axis=0) % 2)
        assert qbmf(checker, K3) == majority_oracle(checker, K3)

    def test_self_duality(self):
        for p, k in random_planes(200, seed=8):
            assert invert_plane(qbmf(p, k)) == qbmf(invert_plane(p), k)

    @settings(max_examples=60, deadline=None)
    @given(arrays(np.uint8, st.tuples(st.integers(3, 20), st.integers(3, 20)), elements=st.integers(0, 1)),
           st.data())
    def test_monotone(self, bits, data):
        extra = data.draw(arrays(np.uint8, bits.shape, elements=st.integers(0, 1)))
        lower, upper = Bitplane(bits), Bitplane(bits | extra)
        assert np.all(qbmf(lower, K3).bits <= qbmf(upper, K3).bits)

    @pytest.mark.parametrize('value', [0, 1])
    def test_constant_planes_are_fixed(self, value):
        p = Bitplane(np.full((9, 7), value))
        for w in (3, 5, 7):
            assert qbmf(p, KernelSpec(w)) == p


class TestQbmfQuantum:
    def test_all_ones_is_fixed(self):
        qp = c2q_plane(Bitplane(np.ones((5, 5))))
        out = qbmf_quantum(qp, K3)
        assert np.all(out.beta == 1) and np.all(out.alpha == 0)

    def test_commuting_square(self):
        for i, (p, k) in enumerate(random_planes(50, seed=31)):
            assert q2c_plane(qbmf_quantum(c2q_plane(p), k), seed=i) == qbmf(p, k)

    def test_rejects_superposition(self):
        alpha = np.ones((4, 4), dtype=complex)
        beta = np.zeros((4, 4), dtype=complex)
        alpha[0, 3] = beta[0, 3] = 1 / np.sqrt(2)
        with pytest.raises(CBSViolationError) as info:
            qbmf_quantum(QuantumPlane(alpha, beta), K3)
        assert info.value.location == (0, 3)


class TestMeanFilter:
    def test_constant_image_is_fixed(self):
        img = GrayImage(np.full((6, 6), 77))
        assert mean_filter(img, K3) == img

    def test_impulse(self):
        img = GrayImage([[0, 0, 0], [0, 9, 0], [0, 0, 0]])
        assert mean_filter(img, K3).pixels.tolist() == [[0, 0, 0], [0, 1, 0], [0, 0, 0]]

    def test_rounds_to_nearest(self):
        img = GrayImage([[1, 1, 1], [1, 5, 1], [1, 1, 1]])  # sum 13 -> 1.44
        assert mean_filter(img, K3).pixels[1, 1] == 1
        img = GrayImage([[2, 2, 2], [2, 2, 2], [2, 2, 0]])  # sum 16 -> 1.78
        assert mean_filter(img, K3).pixels[1, 1] == 2
        img = GrayImage([[0, 0, 0], [0, 0, 0], [0, 0, 45]])  # 45 / 9 == 5 exactly
        assert mean_filter(img, K3).pixels[1, 1] == 5

    def test_rounds_to_nearest_on_5x5(self):
        # 5x5 window: sum 25*2 + 12 -> 62 / 25 = 2.48; sum 25*2 + 13 -> 2.52
        pixels = np.full((5, 5), 2)
        pixels.flat[:12] += 1
        assert mean_filter(GrayImage(pixels), KernelSpec(5)).pixels[2, 2] == 2
        pixels.flat[12] += 1
        assert mean_filter(GrayImage(pixels), KernelSpec(5)).pixels[2, 2] == 3

    def test_matches_direct_average(self, np_rng):
        pixels = np_rng.integers(0, 256, size=(10, 11))
        out = mean_filter(GrayImage(pixels), K3).pixels
        for r in range(1, 9):
            for c in range(1, 10):
                mean = pixels[r - 1:r + 2, c - 1:c + 2].sum() / 9
                assert out[r, c] == int(np.floor(mean + 0.5))

    def test_borders_are_copied(self, np_rng):
        pixels = np_rng.integers(0, 256, size=(7, 9)).astype(np.uint8)
        out = mean_filter(GrayImage(pixels), K3).pixels
        assert np.array_equal(out[0], pixels[0]) and np.array_equal(out[-1], pixels[-1])
        assert np.array_equal(out[:, 0], pixels[:, 0]) and np.array_equal(out[:, -1], pixels[:, -1])

    def test_too_small(self):
        with pytest.raises(ShapeError):
            mean_filter(GrayImage(np.zeros((3, 2))), K3)
