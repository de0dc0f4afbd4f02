"""Scalar root-finding and extremum search used by the parameter sweeps."""

from __future__ import annotations

import math


class NoCrossingError(ValueError):
    """The bracketed function does not change sign."""


def bisect(fn, lo: float, hi: float, xtol: float = 1e-12,
           max_iter: int = 200) -> float:
    """Root of fn on [lo, hi] by bisection; requires a sign change."""
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoCrossingError(
            f"no sign change on [{lo:.6g}, {hi:.6g}]: "
            f"f(lo)={flo:.6g}, f(hi)={fhi:.6g}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0 or (hi - lo) < xtol:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(fn, lo: float, hi: float, xtol: float = 1e-10):
    """Maximum of a unimodal fn on [lo, hi] by golden-section search.

    Returns (x, fn(x)).
    """
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)
