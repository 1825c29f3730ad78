"""Independent reference computations used to validate the volume engine.

None of these share a code path with the contour-integral engine: the Monte
Carlo estimator samples Gaussian vectors directly, the Klein-model integrator
uses scipy's QUADPACK on the defining density, and the two tetrahedron
integrals are classical one-dimensional quadratures.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import CostLimitError, GeometryDomainError
from .geometry import min_curvature

_CHUNK = 1_000_000


@dataclass(frozen=True)
class MonteCarloReport:
    estimate: float
    std_error: float
    samples: int
    seed: int


def mc_spherical_volume(params, kappa, samples=1_000_000, seed=0):
    """Monte Carlo spherical volume for kappa >= s, via the dual-cone test.

    The simplex volume equals omega_{d+1} kappa^{-d/2} times the probability
    that a standard Gaussian vector lands in the cone spanned by the lifted
    vertices; by duality that is Prob[xi_j <= (tau_j/s) sqrt(kappa-s) xi for
    all j] with independent standard normals xi, xi_0..xi_d.  Sampling is
    chunked over seed-derived substreams in a fixed order, so a fixed seed
    gives a bit-identical report regardless of the execution environment.
    """
    s = params.s
    if kappa < s:
        raise GeometryDomainError(
            f"the Gaussian cone representation requires kappa >= s = {s:.6g}")
    taus = np.asarray(params.taus)
    d = params.dimension
    coef = taus / s * math.sqrt(kappa - s)
    n_chunks = (samples + _CHUNK - 1) // _CHUNK
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    hits = 0
    done = 0
    for i in range(n_chunks):
        n = min(_CHUNK, samples - done)
        rng = np.random.default_rng(streams[i])
        xi = rng.standard_normal(n)
        xij = rng.standard_normal((len(taus), n))
        hits += int(np.all(xij <= coef[:, None] * xi[None, :], axis=0).sum())
        done += n
    p_hat = hits / samples
    var = p_hat * (1.0 - p_hat) * samples / max(samples - 1, 1)
    scale = _sphere_area(d) * kappa ** (-d / 2.0)
    return MonteCarloReport(
        estimate=scale * p_hat,
        std_error=scale * math.sqrt(var / samples),
        samples=samples,
        seed=seed,
    )


def _sphere_area(d):
    n2 = d + 1
    if n2 % 2 == 0:
        g = float(math.factorial(n2 // 2 - 1))
    else:
        g = math.sqrt(math.pi)
        for i in range(n2 // 2):
            g *= i + 0.5
    return 2.0 * math.pi ** (n2 / 2.0) / g


def direct_klein_volume(realization, kappa, rel_tol=1e-6):
    """Volume by direct integration of (1 + kappa |y|^2)^{-(d+1)/2} over the simplex.

    Deterministic iterated quadrature after the standard map from the unit
    cube onto the simplex; limited to d in {2, 3} (the cost grows
    exponentially with d).  Warns via GeometryDomainError when kappa is
    numerically at the admissibility boundary, where the integrand blows up.
    """
    v = realization.vertices
    d = v.shape[1]
    if d not in (2, 3):
        raise CostLimitError("direct Klein integration is limited to d in {2, 3}")
    if kappa < 0:
        rmax2 = float(np.max(np.sum(v * v, axis=1)))
        if 1.0 + kappa * rmax2 <= 0.0:
            raise GeometryDomainError(
                "simplex does not fit strictly inside the model ball at this kappa")
    ex = (d + 1) / 2.0
    v0 = v[0]
    B = (v[1:] - v0).T  # columns are edge vectors
    jac0 = abs(np.linalg.det(B))

    if d == 2:
        def f(t2, t1):
            u1 = t1
            u2 = t2 * (1.0 - t1)
            y = v0 + B[:, 0] * u1 + B[:, 1] * u2
            w = 1.0 + kappa * float(y @ y)
            return (1.0 - t1) / w ** ex

        val, err = integrate.dblquad(f, 0.0, 1.0, 0.0, 1.0,
                                     epsabs=0.0, epsrel=rel_tol)
        return jac0 * val

    def f(t3, t2, t1):
        u1 = t1
        u2 = t2 * (1.0 - t1)
        u3 = t3 * (1.0 - t1) * (1.0 - t2)
        y = v0 + B[:, 0] * u1 + B[:, 1] * u2 + B[:, 2] * u3
        w = 1.0 + kappa * float(y @ y)
        return (1.0 - t1) ** 2 * (1.0 - t2) / w ** ex

    val, err = integrate.tplquad(f, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0,
                                 epsabs=0.0, epsrel=rel_tol)
    return jac0 * val


def ideal_tetrahedron_volume():
    """Volume of the ideal regular 3-simplex: -3 * int_0^{pi/3} log(2 sin t) dt.

    The integrable log singularity at 0 is split off analytically:
    int_0^eps log(2 sin t) dt = eps(log(2 eps) - 1) - eps^3/18 - eps^5/900 + ...
    """
    eps = 1e-2
    analytic = eps * (math.log(2.0 * eps) - 1.0) - eps ** 3 / 18.0 - eps ** 5 / 900.0
    val, err = integrate.quad(lambda t: math.log(2.0 * math.sin(t)),
                              eps, math.pi / 3.0, epsabs=1e-14, epsrel=1e-13)
    return -3.0 * (analytic + val)


def regular_tetrahedron_volume(ell):
    """Volume of the regular 3-simplex with hyperbolic side length ell (kappa = -1).

        int_0^ell 3 a sinh(a) / ((1 + 2 cosh a) sqrt((1 + cosh a)(1 + 3 cosh a))) da

    The integrand is smooth and vanishes at 0, and decays like a*exp(-a) for
    large a, approaching the ideal value as ell -> inf.
    """
    if not ell > 0:
        raise GeometryDomainError("side length must be positive")
    ell = float(ell)

    def f(a):
        ch = math.cosh(a)
        return 3.0 * a * math.sinh(a) / ((1.0 + 2.0 * ch)
                                         * math.sqrt((1.0 + ch) * (1.0 + 3.0 * ch)))

    pieces = [0.0]
    step = 5.0
    while pieces[-1] + step < ell:
        pieces.append(pieces[-1] + step)
    pieces.append(ell)
    total = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        val, err = integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
        total += val
    return total
