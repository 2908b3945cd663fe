import numpy as np
import pytest

from ccpsd.codebook import ConstraintFamily, contains_forbidden, forbidden_patterns
from ccpsd.oracle import (
    StreamConfig,
    estimate_autocorr,
    estimate_psd,
    generate_stream,
)
from ccpsd.presets import continuous_psd
from ccpsd.spectrum import default_grid


def cfg(kind, x, m=None, n=200_000, seed=7):
    return StreamConfig(ConstraintFamily(kind, x, m), n_symbols=n, seed=seed)


class TestGeneration:
    def test_deterministic_given_seed(self):
        a = generate_stream(cfg("ax", 2))
        b = generate_stream(cfg("ax", 2))
        assert np.array_equal(a, b)
        c = generate_stream(cfg("ax", 2, seed=8))
        assert not np.array_equal(a, c)

    def test_levels_are_antipodal(self):
        for kind, x, m in [("ax", 1, None), ("sx", 2, None), ("iid", 0, None),
                           ("aloco", 1, 4)]:
            s = generate_stream(cfg(kind, x, m))
            assert set(np.unique(s)) <= {-1, 1}

    def test_three_level_stream(self):
        s = generate_stream(cfg("loco", 1, 4))
        assert set(np.unique(s)) == {-1, 0, 1}

    @pytest.mark.parametrize("kind,x", [("ax", 1), ("ax", 3), ("sx", 1), ("sx", 3)])
    def test_no_forbidden_patterns(self, kind, x):
        fam = ConstraintFamily(kind, x)
        s = generate_stream(cfg(kind, x, n=50_000))
        bits = tuple(int(v > 0) for v in s)
        for pat in forbidden_patterns(fam):
            assert not contains_forbidden(bits, [pat]), pat

    def test_loco_bridges_are_zero(self):
        m, x = 4, 1
        s = generate_stream(cfg("loco", x, m, n=50_000))
        period = m + x
        for phase in range(m, period):
            assert np.all(s[phase::period] == 0)

    def test_run_length_constraint_on_sx(self):
        # every run must be at least x+1 long
        x = 2
        s = generate_stream(cfg("sx", x, n=50_000))
        changes = np.flatnonzero(np.diff(s))
        runs = np.diff(changes)
        assert runs.min() >= x + 1


class TestEstimation:
    def test_autocorr_lag_zero_unity(self):
        s = generate_stream(cfg("ax", 1))
        r = estimate_autocorr(s, 4)
        assert abs(r[0] - 1.0) < 1e-12

    def test_iid_spectrum_flat(self):
        s = generate_stream(cfg("iid", 0, n=1_000_000))
        freqs = default_grid(128)
        est = estimate_psd(s, freqs, family=ConstraintFamily("iid", 0), kmax=64)
        assert np.max(np.abs(est - 1.0)) < 0.05

    def test_finite_family_converges(self):
        fam = ConstraintFamily("aloco", 1, 4)
        s = generate_stream(StreamConfig(fam, n_symbols=1_000_000, seed=3))
        freqs = default_grid(128)
        est = estimate_psd(s, freqs, family=fam)
        theory = continuous_psd(fam, freqs, with_pulse=False)
        assert np.max(np.abs(est - theory)) < 0.03

    def test_infinite_family_converges(self):
        fam = ConstraintFamily("ax", 1)
        s = generate_stream(StreamConfig(fam, n_symbols=1_000_000, seed=3))
        freqs = default_grid(128)
        est = estimate_psd(s, freqs, family=fam, kmax=48)
        theory = continuous_psd(fam, freqs, with_pulse=False)
        assert np.max(np.abs(est - theory)) < 0.05
