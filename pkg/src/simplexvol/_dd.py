"""Vectorized double-double (compensated) arithmetic on numpy arrays.

A double-double value is an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
giving roughly 32 significant digits.  Only the handful of operations needed
by the Taylor-series evaluation of the complex normal CDF are provided.
All functions accept and return plain float64 ndarrays (hi, lo pairs).
"""

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    # requires |a| >= |b| elementwise
    s = a + b
    err = b - (s - a)
    return s, err


def two_prod(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add(xh, xl, yh, yl):
    s, e = two_sum(xh, yh)
    e = e + (xl + yl)
    return quick_two_sum(s, e)


def dd_mul(xh, xl, yh, yl):
    p, e = two_prod(xh, yh)
    e = e + (xh * yl + xl * yh)
    return quick_two_sum(p, e)


def dd_div_scalar(xh, xl, b):
    # divide dd by an exact double scalar
    q = xh / b
    p, e = two_prod(q, b)
    r = ((xh - p) - e + xl) / b
    return quick_two_sum(q, r)


def cdd_mul(xr, xrl, xi, xil, yr, yrl, yi, yil):
    """(xr+ i xi)(yr + i yi) with all four components double-double."""
    ach, acl = dd_mul(xr, xrl, yr, yrl)
    bdh, bdl = dd_mul(xi, xil, yi, yil)
    reh, rel = dd_add(ach, acl, -bdh, -bdl)
    adh, adl = dd_mul(xr, xrl, yi, yil)
    bch, bcl = dd_mul(xi, xil, yr, yrl)
    imh, iml = dd_add(adh, adl, bch, bcl)
    return reh, rel, imh, iml


def cdd_div_scalar(xr, xrl, xi, xil, b):
    rh, rl = dd_div_scalar(xr, xrl, b)
    ih, il = dd_div_scalar(xi, xil, b)
    return rh, rl, ih, il


def cdd_add(xr, xrl, xi, xil, yr, yrl, yi, yil):
    rh, rl = dd_add(xr, xrl, yr, yrl)
    ih, il = dd_add(xi, xil, yi, yil)
    return rh, rl, ih, il


def complex_square_dd(x, y):
    """Exact double-double value of (x + i y)**2 for float64 x, y."""
    x2h, x2l = two_prod(x, x)
    y2h, y2l = two_prod(y, y)
    reh, rel = dd_add(x2h, x2l, -y2h, -y2l)
    imh, iml = two_prod(2.0 * x, y)
    return reh, rel, imh, iml
