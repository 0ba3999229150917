import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onebit_mimo.numerics import RandomStream, sample_circular_gaussian
from onebit_mimo.system_model import (
    SystemConfig,
    data_receive,
    draw_channel,
    make_pilots,
    quantize,
    snr_db_to_linear,
    training_receive,
)

S = 1.0 / math.sqrt(2.0)


def cfg_for(m, k, rho_p=1.0, rho_d=1.0, **kw):
    return SystemConfig(M=m, K=k, tau=k, rho_p=rho_p, rho_d=rho_d, **kw)


class TestSystemConfig:
    def test_accepts_valid(self):
        cfg_for(128, 8)

    @pytest.mark.parametrize(
        "kw",
        [
            dict(M=0, K=1, tau=1, rho_p=1, rho_d=1),
            dict(M=1, K=0, tau=0, rho_p=1, rho_d=1),
            dict(M=4, K=2, tau=3, rho_p=1, rho_d=1),
            dict(M=4, K=2, tau=2, rho_p=0, rho_d=1),
            dict(M=4, K=2, tau=2, rho_p=1, rho_d=-2),
            dict(M=4, K=2, tau=2, rho_p=1, rho_d=1, trials=0),
            dict(M=4, K=2, tau=2, rho_p=1, rho_d=1, master_seed=-1),
        ],
    )
    def test_rejects_invalid(self, kw):
        with pytest.raises(ValueError):
            SystemConfig(**kw)

    def test_snr_conversion(self):
        assert snr_db_to_linear(0.0) == 1.0
        assert snr_db_to_linear(10.0) == pytest.approx(10.0, rel=1e-15)
        assert snr_db_to_linear(-10.0) == pytest.approx(0.1, rel=1e-15)


class TestMakePilots:
    def test_scalar_case(self):
        phi = make_pilots(cfg_for(1, 1))
        assert phi.shape == (1, 1)
        assert phi[0, 0] == pytest.approx(1.0)
        gram = phi.T @ phi.conj()
        assert gram[0, 0] == pytest.approx(1.0)

    def test_k2_matches_direct_multiplication(self):
        phi = make_pilots(cfg_for(2, 2))
        assert np.allclose(phi, np.array([[1, 1], [1, -1]]), atol=1e-12)
        assert np.allclose(phi.T @ phi.conj(), 2 * np.eye(2), atol=1e-12)

    def test_k8_gram_via_loop_oracle(self):
        phi = make_pilots(cfg_for(8, 8))
        gram = np.zeros((8, 8), dtype=complex)
        for a in range(8):
            for b in range(8):
                for t in range(8):
                    gram[a, b] += phi[t, a] * np.conj(phi[t, b])
        assert np.abs(gram - 8 * np.eye(8)).max() < 1e-12

    @pytest.mark.parametrize("k", list(range(1, 65)))
    def test_orthogonality_all_k(self, k):
        phi = make_pilots(cfg_for(max(k, 1), k))
        assert np.abs(phi.T @ phi.conj() - k * np.eye(k)).max() < 1e-12

    def test_unit_modulus(self):
        phi = make_pilots(cfg_for(16, 16))
        assert np.abs(np.abs(phi) - 1.0).max() < 1e-15


class TestQuantize:
    def test_sign_pattern(self):
        r = quantize(np.array([[0.3 - 0.5j]]))
        assert r[0, 0] == complex(S, -S)

    def test_sign_zero_is_plus_one(self):
        r = quantize(np.array([[-2.0 + 0.0j]]))
        assert r[0, 0] == complex(-S, S)

    def test_negative_zero_counts_as_zero(self):
        r = quantize(np.array([[complex(-0.0, -0.0)]]))
        assert r[0, 0] == complex(S, S)

    def test_output_power_is_one(self):
        y = sample_circular_gaussian(RandomStream(1, 0), 16, 16, 3.0)
        r = quantize(y)
        assert np.abs(np.abs(r) ** 2 - 1.0).max() < 1e-15

    def test_outputs_in_four_point_set(self):
        y = sample_circular_gaussian(RandomStream(2, 0), 64, 64)
        r = quantize(y)
        lattice = {complex(S, S), complex(S, -S), complex(-S, S), complex(-S, -S)}
        assert set(r.ravel().tolist()) <= lattice

    @given(st.floats(min_value=1e-6, max_value=1e6))
    @settings(max_examples=30, deadline=None)
    def test_scale_invariance(self, c):
        y = sample_circular_gaussian(RandomStream(3, 0), 8, 8)
        assert (quantize(c * y) == quantize(y)).all()

    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="NaN"):
            quantize(np.array([[complex(np.nan, 0.0)]]))


class TestTrainingReceive:
    def test_noiseless_product(self):
        cfg = cfg_for(1, 1, rho_p=4.0)
        out = training_receive(
            cfg,
            np.array([[2.0 + 0j]]),
            np.array([[1.0 + 0j]]),
            RandomStream(0, 0),
            noise=np.zeros((1, 1), dtype=complex),
        )
        assert out[0, 0] == pytest.approx(4.0)

    def test_noise_only_limit(self):
        # rho_p -> 0: output statistics are pure unit noise
        cfg = cfg_for(1000, 1, rho_p=1e-12)
        phi = make_pilots(cfg)
        acc = []
        for t in range(1000):
            stream = RandomStream(7, t)
            h = draw_channel(cfg, stream)
            acc.append(np.abs(training_receive(cfg, h, phi, stream)) ** 2)
        assert abs(np.mean(acc) - 1.0) < 0.01

    def test_entry_power_matches_k_rho_plus_one(self):
        # sample-moment oracle: E|Y_p entry|^2 = K*rho_p + 1
        cfg = cfg_for(500, 4, rho_p=2.0)
        phi = make_pilots(cfg)
        acc = []
        for t in range(500):
            stream = RandomStream(8, t)
            h = draw_channel(cfg, stream)
            acc.append(np.abs(training_receive(cfg, h, phi, stream)) ** 2)
        expected = cfg.K * cfg.rho_p + 1.0
        assert abs(np.mean(acc) - expected) / expected < 0.01

    def test_shape_mismatch(self):
        cfg = cfg_for(4, 2)
        phi = make_pilots(cfg)
        with pytest.raises(ValueError):
            training_receive(cfg, np.zeros((3, 2), dtype=complex), phi, RandomStream(0, 0))


class TestDataReceive:
    def test_noiseless_scalar(self):
        cfg = cfg_for(1, 1, rho_d=9.0)
        out = data_receive(
            cfg,
            np.array([[1.0 + 0j]]),
            np.array([[1.0 + 0j]]),
            RandomStream(0, 0),
            noise=np.zeros((1, 1), dtype=complex),
        )
        assert out[0, 0] == pytest.approx(3.0)

    def test_zero_symbols_give_pure_noise(self):
        cfg = cfg_for(1000, 2, rho_d=5.0)
        s = np.zeros((2, 1), dtype=complex)
        acc = []
        for t in range(1000):
            stream = RandomStream(9, t)
            h = draw_channel(cfg, stream)
            acc.append(np.abs(data_receive(cfg, h, s, stream)) ** 2)
        assert abs(np.mean(acc) - 1.0) < 0.01

    def test_entry_power_matches_k_rho_plus_one(self):
        # one symbol vector is shared by all M antennas, so the effective
        # sample count is the trial count; keep M modest and draws many
        cfg = cfg_for(100, 8, rho_d=0.5)
        acc = []
        for t in range(10000):
            stream = RandomStream(10, t)
            h = draw_channel(cfg, stream)
            s = sample_circular_gaussian(stream, cfg.K, 1, 1.0)
            acc.append(np.abs(data_receive(cfg, h, s, stream)) ** 2)
        expected = cfg.K * cfg.rho_d + 1.0
        assert abs(np.mean(acc) - expected) / expected < 0.01

    def test_shape_mismatch(self):
        cfg = cfg_for(4, 2)
        with pytest.raises(ValueError):
            data_receive(
                cfg, np.zeros((4, 2), dtype=complex), np.zeros((3, 1), dtype=complex),
                RandomStream(0, 0),
            )
