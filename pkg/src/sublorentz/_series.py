"""Cancellation-free evaluation of the trigonometric/hyperbolic combinations
that appear in the closed-form geodesic.

Every helper takes ``T`` (scalar or array, any float dtype) and switches to a
Taylor series for ``|T| < 1``.  Series coefficients are exact rationals built
once at import time.
"""
from fractions import Fraction
from math import factorial

import numpy as np

_ORDER = 30
_SWITCH = 1.0


def _base(kind):
    out = [Fraction(0)] * (_ORDER + 1)
    for n in range(_ORDER + 1):
        f = Fraction(1, factorial(n))
        if kind == "exp":
            out[n] = f
        elif kind == "sinh" and n % 2:
            out[n] = f
        elif kind == "cosh" and not n % 2:
            out[n] = f
        elif kind == "sin" and n % 2:
            out[n] = f * (-1) ** (n // 2)
        elif kind == "cos" and not n % 2:
            out[n] = f * (-1) ** (n // 2)
    return out


def _mul(a, b):
    out = [Fraction(0)] * (_ORDER + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(_ORDER + 1 - i):
                out[i + j] += ai * b[j]
    return out


def _lin(*terms):
    out = [Fraction(0)] * (_ORDER + 1)
    for c, s in terms:
        for i, v in enumerate(s):
            out[i] += c * v
    return out


_S, _C = _base("sin"), _base("cos")
_SH, _CH = _base("sinh"), _base("cosh")
_T = [Fraction(0)] * (_ORDER + 1)
_T[1] = Fraction(1)
_ONE = [Fraction(0)] * (_ORDER + 1)
_ONE[0] = Fraction(1)

_TABLES = {
    "sinh_minus_id": _lin((1, _SH), (-1, _T)),
    "id_minus_sin": _lin((1, _T), (-1, _S)),
    "cc_minus_one": _lin((1, _mul(_C, _CH)), (-1, _ONE)),
    "ss_plus_c_minus_ch": _lin((1, _mul(_S, _SH)), (1, _C), (-1, _CH)),
    "c_sh_minus_s": _lin((1, _mul(_C, _SH)), (-1, _S)),
    "s_ch_minus_sh": _lin((1, _mul(_S, _CH)), (-1, _SH)),
    "s_ch_minus_c_sh": _lin((1, _mul(_S, _CH)), (-1, _mul(_C, _SH))),
}

_COEFF_CACHE = {}


def _coeffs(name, dtype):
    key = (name, np.dtype(dtype))
    if key not in _COEFF_CACHE:
        tab = _TABLES[name]
        lo = min(i for i, c in enumerate(tab) if c)
        c = [dtype(f.numerator) / dtype(f.denominator) for f in tab[lo:]]
        _COEFF_CACHE[key] = (lo, c[::-1])
    return _COEFF_CACHE[key]


def _series(name, T):
    lo, rev = _coeffs(name, T.dtype.type)
    acc = np.zeros_like(T)
    for c in rev:
        acc = acc * T + c
    return acc * T**lo


def _piecewise(name, T, direct):
    T = np.asarray(T)
    if not np.issubdtype(T.dtype, np.floating):
        T = T.astype(np.float64)
    small = np.abs(T) < _SWITCH
    if small.all():
        out = _series(name, T)
    elif not small.any():
        out = direct(T)
    else:
        out = direct(np.where(small, T.dtype.type(2), T))
        out = np.where(small, _series(name, np.where(small, T, 0)), out)
    return out[()] if out.ndim == 0 else out


def sinh_minus_id(T):
    """sinh T - T."""
    return _piecewise("sinh_minus_id", T, lambda x: np.sinh(x) - x)


def id_minus_sin(T):
    """T - sin T."""
    return _piecewise("id_minus_sin", T, lambda x: x - np.sin(x))


def cosh_minus_one(T):
    T = np.asarray(T)
    return 2 * np.sinh(T / 2) ** 2


def one_minus_cos(T):
    T = np.asarray(T)
    return 2 * np.sin(T / 2) ** 2


def cc_minus_one(T):
    """cos T cosh T - 1."""
    return _piecewise("cc_minus_one", T, lambda x: np.cos(x) * np.cosh(x) - 1)


def ss_plus_c_minus_ch(T):
    """sin T sinh T + cos T - cosh T."""
    return _piecewise("ss_plus_c_minus_ch", T,
                      lambda x: np.sin(x) * np.sinh(x) + np.cos(x) - np.cosh(x))


def c_sh_minus_s(T):
    """cos T sinh T - sin T."""
    return _piecewise("c_sh_minus_s", T, lambda x: np.cos(x) * np.sinh(x) - np.sin(x))


def s_ch_minus_sh(T):
    """sin T cosh T - sinh T."""
    return _piecewise("s_ch_minus_sh", T, lambda x: np.sin(x) * np.cosh(x) - np.sinh(x))


def s_ch_minus_c_sh(T):
    """sin T cosh T - cos T sinh T."""
    return _piecewise("s_ch_minus_c_sh", T,
                      lambda x: np.sin(x) * np.cosh(x) - np.cos(x) * np.sinh(x))
