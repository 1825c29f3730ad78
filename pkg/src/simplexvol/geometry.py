"""Orthocentric-simplex parameterization, curvature bounds, and vertex realization.

A simplex [v_0, ..., v_d] in R^d is *orthocentric with parameters
tau_0, ..., tau_d > 0* when, with s = sum tau_j^2,

    <v_j, v_k> = -1/s   (j != k),      |v_j|^2 = -1/s + 1/tau_j^2.

Its altitudes then meet at the origin.  Regular simplices are the equal-tau
special case.  All functions here are pure and exact up to rounding.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryDomainError, RankDeficiencyError

#: cosh argument beyond which the ideal-limit formulas are used verbatim
#: (cosh overflows a double near 710; the ratios are within 1e-300 of the
#:  limit long before that)
_COSH_LIMIT = 700.0


@dataclass(frozen=True)
class OrthocentricParams:
    """Positive parameters tau_0..tau_d and the cached sum of squares."""

    taus: tuple
    s: float = field(init=False)

    def __post_init__(self):
        taus = tuple(float(t) for t in self.taus)
        object.__setattr__(self, "taus", taus)
        if len(taus) < 3:
            raise GeometryDomainError("need at least 3 parameters (dimension >= 2)")
        if any(t <= 0 or not math.isfinite(t) for t in taus):
            raise GeometryDomainError("all parameters must be positive and finite")
        object.__setattr__(self, "s", math.fsum(t * t for t in taus))

    @property
    def dimension(self):
        return len(self.taus) - 1

    def multipliers(self):
        """mu_j = tau_j / s, the weights entering the volume integrand."""
        return tuple(t / self.s for t in self.taus)


@dataclass(frozen=True)
class Curvature:
    """Nonzero sectional curvature with sign classification."""

    kappa: float

    def __post_init__(self):
        object.__setattr__(self, "kappa", float(self.kappa))
        if self.kappa == 0 or not math.isfinite(self.kappa):
            raise GeometryDomainError("curvature must be nonzero and finite")

    @property
    def is_hyperbolic(self):
        return self.kappa < 0

    @property
    def is_spherical(self):
        return self.kappa > 0


@dataclass(frozen=True)
class RegularSimplexSpec:
    """Regular hyperbolic simplex: dimension, side length (inf = ideal), curvature."""

    d: int
    side_length: float
    kappa: float = -1.0

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "side_length", float(self.side_length))
        object.__setattr__(self, "kappa", float(self.kappa))
        if self.d < 2:
            raise GeometryDomainError("dimension must be >= 2")
        if not self.side_length > 0:
            raise GeometryDomainError("side length must be positive (inf = ideal)")
        if self.kappa >= 0 or not math.isfinite(self.kappa):
            raise GeometryDomainError("regular simplex spec requires kappa < 0")

    @property
    def is_ideal(self):
        return math.isinf(self.side_length)


@dataclass(frozen=True)
class VertexRealization:
    """Vertices of an orthocentric simplex in d-dimensional coordinates."""

    vertices: np.ndarray

    def gram_residual(self, params):
        """Largest deviation of the vertex Gram matrix from its closed form."""
        v = self.vertices
        g = v @ v.T
        s = params.s
        want = np.full_like(g, -1.0 / s)
        want[np.diag_indices_from(want)] = [-1.0 / s + 1.0 / t ** 2
                                            for t in params.taus]
        return float(np.max(np.abs(g - want)))


def min_curvature(params):
    """Most negative curvature kappa0 for which the simplex fits the model ball.

    The simplex lies in the closed ball of curvature kappa iff kappa >= kappa0.
    """
    s = params.s
    return -min(t * t * s / (s - t * t) for t in params.taus)


def side_length(params, j, k, kappa):
    """Hyperbolic distance between vertices j and k at curvature kappa in (kappa0, 0)."""
    if j == k:
        raise GeometryDomainError("side length needs two distinct vertex indices")
    k0 = min_curvature(params)
    if not (k0 < kappa < 0):
        raise GeometryDomainError(
            f"side lengths require kappa in (kappa0, 0) = ({k0:.6g}, 0); got {kappa}")
    s = params.s
    tj, tk = params.taus[j], params.taus[k]
    fj = s - kappa + kappa * s / tj ** 2
    fk = s - kappa + kappa * s / tk ** 2
    arg = (s - kappa) / math.sqrt(fj * fk)
    if arg < 1.0:
        if arg > 1.0 - 1e-12:
            arg = 1.0
        else:
            raise GeometryDomainError(f"inconsistent inputs: acosh argument {arg} < 1")
    return math.acosh(arg) / math.sqrt(-kappa)


def regular_parameters(spec):
    """Equal orthocentric parameters reproducing the requested side length.

    For ell = inf (or cosh overflow) the ideal limit tau^2 = -kappa*d/(d+1)
    is used directly.
    """
    d, kappa = spec.d, spec.kappa
    u = spec.side_length * math.sqrt(-kappa)
    if spec.is_ideal or u > _COSH_LIMIT:
        tau2 = -kappa * d / (d + 1.0)
    else:
        ch = math.cosh(u)
        # cosh(u) - 1 = 2 sinh(u/2)^2, stable for small u
        tau2 = -kappa * (1.0 + d * ch) / ((d + 1.0) * 2.0 * math.sinh(u / 2.0) ** 2)
    tau = math.sqrt(tau2)
    return OrthocentricParams(taus=(tau,) * (d + 1))


def cosh_ratio(spec):
    """cosh(ell sqrt(-kappa)) / (1 + d cosh(ell sqrt(-kappa))), in (1/(d+1), 1/d].

    This is the squared coupling of the volume integrand; it equals 1/d
    exactly in the ideal case.
    """
    d = spec.d
    u = spec.side_length * math.sqrt(-spec.kappa)
    if spec.is_ideal or u > _COSH_LIMIT:
        return 1.0 / d
    ch = math.cosh(u)
    return ch / (1.0 + d * ch)


def realize_vertices(params):
    """Concrete vertices satisfying the orthocentric Gram identities.

    Start from e_j/tau_j - H in (d+1)-space, where H is the common altitude
    foot sum(tau_j e_j)/s; these vectors span the hyperplane orthogonal to
    (tau_0, ..., tau_d), which is mapped isometrically onto R^d.
    """
    taus = np.asarray(params.taus)
    s = params.s
    n = len(taus)
    pts = np.diag(1.0 / taus) - np.outer(np.ones(n), taus / s)
    # orthonormal basis of the hyperplane orthogonal to taus, via Householder
    w = taus / np.linalg.norm(taus)
    e = np.zeros(n)
    e[0] = 1.0
    u = w - e
    nu = np.linalg.norm(u)
    if nu < 1e-15:
        basis = np.eye(n)[1:]
    else:
        u /= nu
        basis = (np.eye(n) - 2.0 * np.outer(u, u))[1:]
    verts = pts @ basis.T
    if np.linalg.matrix_rank(verts[1:] - verts[0], tol=1e-10) < n - 1:
        raise RankDeficiencyError("vertex realization is rank deficient")
    return VertexRealization(vertices=verts)


def euclidean_volume(realization):
    """Euclidean volume |det(v_1 - v_0, ..., v_d - v_0)| / d! of the simplex."""
    v = realization.vertices
    d = v.shape[1]
    mat = v[1:] - v[0]
    return abs(np.linalg.det(mat)) / math.factorial(d)
