"""Shared high-precision oracles, independent of the package's own code paths."""

import mpmath as mp
import pytest


def mp_norm_cdf(z, dps=40):
    """Reference complex normal CDF via mpmath's arbitrary-precision erf."""
    with mp.workdps(dps):
        return complex(mp.mpf(1) / 2 + mp.erf(mp.mpc(z) / mp.sqrt(2)) / 2)


def mp_norm_cdf_real_bruteforce(x, dps=30):
    """Real-axis CDF by direct quadrature of the density (no erf involved)."""
    with mp.workdps(dps):
        val = mp.quad(lambda t: mp.exp(-t * t / 2), [0, mp.mpf(x)])
        return float(mp.mpf(1) / 2 + val / mp.sqrt(2 * mp.pi))


@pytest.fixture(scope="session")
def mp_cdf():
    return mp_norm_cdf
