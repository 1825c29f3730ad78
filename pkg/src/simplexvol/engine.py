"""Volumes of orthocentric and regular simplices in constant-curvature spaces.

The volume of an orthocentric simplex Q with parameters tau_0..tau_d in the
model of curvature kappa is

    Vol = omega_{d+1} * P(kappa - s) / (i^d |kappa|^{d/2})     (kappa < 0)
    Vol = omega_{d+1} * P(kappa - s) / kappa^{d/2}             (kappa > 0)

where s = sum tau_j^2, omega_{d+1} is the surface area of the unit d-sphere,
and P is the analytic continuation of the Gaussian orthant probability

    P(z) = Prob[xi_j <= (tau_j/s) sqrt(z) xi  for all j]
         = (2 pi)^{-1/2} int_0^{ray} ( prod_j N(mu_j sqrt(z) x)
                                     + prod_j N(-mu_j sqrt(z) x) ) e^{-x^2/2} dx

with mu_j = tau_j/s, taken along the ray 1-i with sqrt(-r) = +i sqrt(r)
(upper branch) or along 1+i with the mirrored convention (lower branch).
The exact volume is real; the imaginary residual of the assembled expression
is reported as a numerical health diagnostic.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple, Union

from .cnormal import SQRT_2PI
from .errors import GeometryDomainError, NearPoleError, ToleranceError
from .geometry import (
    OrthocentricParams, RegularSimplexSpec, cosh_ratio, euclidean_volume,
    min_curvature, realize_vertices, regular_parameters,
)
from .rayquad import (
    HalfPlane, QuadratureConfig, RayIntegralProblem, ray_integral,
)

_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)


class Branch(Enum):
    UPPER_RAY = "upper_ray"
    LOWER_RAY = "lower_ray"
    REAL_AXIS = "real_axis"


@dataclass(frozen=True)
class VolumeRequest:
    """What to compute: a geometry, a curvature, and an accuracy target.

    geometry is either OrthocentricParams (kappa required, any kappa >= kappa0)
    or RegularSimplexSpec (kappa < 0 carried by the spec; side_length = inf
    encodes the ideal simplex).  tolerance is absolute on the orthant-transform
    values, which surfaces as roughly 1e2*tolerance relative on volumes.
    """

    geometry: Union[OrthocentricParams, RegularSimplexSpec]
    kappa: float = None
    tolerance: float = 1e-10
    use_lower_branch: bool = False

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if isinstance(self.geometry, RegularSimplexSpec):
            k = self.geometry.kappa
            if self.kappa is not None and float(self.kappa) != k:
                raise GeometryDomainError(
                    "kappa given both in the spec and the request, inconsistently")
            object.__setattr__(self, "kappa", k)
        else:
            if self.kappa is None:
                raise GeometryDomainError("orthocentric requests must supply kappa")
            object.__setattr__(self, "kappa", float(self.kappa))


@dataclass(frozen=True)
class VolumeResult:
    volume: float
    abs_error: float
    residual_imag: float
    branch: Branch
    evaluations: int = 0


class OrthantTransform(NamedTuple):
    value: complex
    abs_error: float
    evaluations: int


def sphere_surface_area(d):
    """Surface area of the unit d-sphere in R^{d+1}: 2 pi^{(d+1)/2} / Gamma((d+1)/2)."""
    n2 = d + 1  # Gamma(n2/2) by exact half-integer recursion
    if n2 % 2 == 0:
        g = float(math.factorial(n2 // 2 - 1))
    else:
        g = math.sqrt(math.pi)
        for i in range(n2 // 2):
            g *= i + 0.5
    return 2.0 * math.pi ** (n2 / 2.0) / g


def _quad_config(tolerance):
    t = min(max(tolerance / 8.0, 1e-14), 1e-4)
    return QuadratureConfig(rel_tol=t, abs_tol=t)


def orthant_probability(mus, z, cfg=None, half_plane=HalfPlane.UPPER):
    """Analytic continuation of the Gaussian orthant probability (see module doc).

    For real z > 0 this is the plain real-axis integral; elsewhere it is
    evaluated on the boundary ray matching the half plane.  Raises
    NearPoleError within 1e-8 of the excluded points z = -1/mu_j^2.
    """
    mus = tuple(float(m) for m in mus)
    z = complex(z)
    if any(m == 0 for m in mus):
        raise ValueError("multipliers must be nonzero")
    if half_plane is HalfPlane.UPPER and z.imag < 0:
        raise ValueError("upper-branch transform requires Im z >= 0")
    if half_plane is HalfPlane.LOWER and z.imag > 0:
        raise ValueError("lower-branch transform requires Im z <= 0")
    for m in mus:
        if abs(1.0 + m * m * z) < 1e-8:
            raise NearPoleError(
                f"z is within the guard band of the excluded pole -1/mu^2 for mu={m}")
    cfg = cfg or _quad_config(1e-10)
    if z == 0:
        return OrthantTransform(complex(2.0 ** (-len(mus))), 1e-16, 0)
    if z.imag == 0 and z.real > 0:
        omega = 1.0 + 0.0j
    else:
        omega = 1 - 1j if half_plane is HalfPlane.UPPER else 1 + 1j
    flipped = tuple(-m for m in mus)
    r1 = ray_integral(RayIntegralProblem(mus, z, omega, half_plane), cfg)
    r2 = ray_integral(RayIntegralProblem(flipped, z, omega, half_plane), cfg)
    value = (r1.value + r2.value) / SQRT_2PI
    err = (r1.abs_error_estimate + r2.abs_error_estimate) / SQRT_2PI
    return OrthantTransform(value, err, r1.evaluations + r2.evaluations)


def _resolve_geometry(req):
    geo = req.geometry
    if isinstance(geo, RegularSimplexSpec):
        params = regular_parameters(geo)
        return params, geo.d, req.kappa
    return geo, geo.dimension, req.kappa


def volume(req):
    """Volume of the requested simplex in the space of curvature kappa."""
    params, d, kappa = _resolve_geometry(req)
    if kappa == 0.0:
        vol = euclidean_volume(realize_vertices(params))
        return VolumeResult(vol, 1e-13 * max(vol, 1.0), 0.0, Branch.REAL_AXIS, 0)
    k0 = min_curvature(params)
    if kappa < k0 * (1.0 + 1e-12):
        raise GeometryDomainError(
            f"kappa must be >= kappa0 = {k0:.12g} for this simplex; got {kappa}")
    kappa = max(kappa, k0)  # clamp rounding right at the boundary
    s = params.s
    z = kappa - s
    mus = params.multipliers()
    cfg = _quad_config(req.tolerance)
    hp = HalfPlane.LOWER if req.use_lower_branch else HalfPlane.UPPER
    tr = orthant_probability(mus, z, cfg, hp)
    area = sphere_surface_area(d)
    if kappa < 0:
        # i^d for the upper branch, (-i)^d for the lower branch
        ipow = _I_POW[d % 4] if hp is HalfPlane.UPPER else _I_POW[(4 - d % 4) % 4]
        c = area * tr.value / (ipow * abs(kappa) ** (d / 2.0))
        scale = area / abs(kappa) ** (d / 2.0)
        branch = Branch.LOWER_RAY if req.use_lower_branch else Branch.UPPER_RAY
    else:
        c = area * tr.value / kappa ** (d / 2.0)
        scale = area / kappa ** (d / 2.0)
        branch = Branch.REAL_AXIS if (z.imag == 0 and z.real >= 0) else (
            Branch.LOWER_RAY if req.use_lower_branch else Branch.UPPER_RAY)
    vol = c.real
    residual = abs(c.imag)
    abs_err = scale * tr.abs_error + residual
    if residual > 100.0 * req.tolerance * max(1.0, scale):
        raise ToleranceError(
            f"imaginary residual {residual:.3g} exceeds 100x the requested tolerance; "
            "the branch assembly is numerically unhealthy",
            result=VolumeResult(vol, abs_err, residual, branch, tr.evaluations))
    return VolumeResult(vol, abs_err, residual, branch, tr.evaluations)


def regular_volume(d, side_length, kappa=-1.0, tolerance=1e-10):
    """Convenience wrapper: volume of the regular simplex (side inf = ideal)."""
    spec = RegularSimplexSpec(d=d, side_length=side_length, kappa=kappa)
    return volume(VolumeRequest(geometry=spec, tolerance=tolerance))


def curvature_scaling_residual(spec, tolerance=1e-10):
    """|Vol_{d,kappa}(ell) - |kappa|^{-d/2} Vol_{d,-1}(ell sqrt(|kappa|))|.

    The coupling of the volume integrand depends on ell*sqrt(-kappa) only, so
    this vanishes identically up to quadrature error.
    """
    if spec.is_ideal:
        ref = RegularSimplexSpec(d=spec.d, side_length=math.inf, kappa=-1.0)
    else:
        ref = RegularSimplexSpec(d=spec.d,
                                 side_length=spec.side_length * math.sqrt(-spec.kappa),
                                 kappa=-1.0)
    v1 = volume(VolumeRequest(geometry=spec, tolerance=tolerance))
    v2 = volume(VolumeRequest(geometry=ref, tolerance=tolerance))
    return abs(v1.volume - abs(spec.kappa) ** (-spec.d / 2.0) * v2.volume)
