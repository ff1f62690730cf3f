"""Bracketing root and extremum search on scalar functions."""
import math


def bisect(f, a, b, xtol=0.0, max_iter=400):
    """Root of f in [a, b] by bisection; f(a), f(b) must not share a sign.

    With xtol=0 the loop runs until the midpoint can no longer split the
    bracket, i.e. to full floating-point resolution.
    """
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise ValueError(f"root not bracketed on [{a!r}, {b!r}]")
    for _ in range(max_iter):
        m = a + (b - a) / 2
        if m <= a or m >= b or (b - a) <= xtol:
            break
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return a + (b - a) / 2


_INVPHI = (math.sqrt(5) - 1) / 2


def golden_section_max(f, a, b, tol=1e-10):
    """(argmax, max) of a unimodal f on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)
