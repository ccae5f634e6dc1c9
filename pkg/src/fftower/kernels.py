"""Kernel selection: compiled extension if built, pure Python otherwise.

The hot loops (dense polynomial arithmetic over F_p and the point-counting
scan) live in fftower._core, a Cython extension. Environments without a
compiler fall back to fftower._corepy, which implements exactly the same
functions. Set FFTOWER_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("FFTOWER_PURE"):
    from . import _corepy as _impl

    HAVE_COMPILED_CORE = False
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        HAVE_COMPILED_CORE = True
    except ImportError:
        from . import _corepy as _impl

        HAVE_COMPILED_CORE = False

from . import _corepy as _pure

#: the compiled kernels assume coefficients fit comfortably in int64
_COMPILED_P_LIMIT = 2**31


def _dispatch(fast, pure):
    if fast is pure:
        return pure

    def run(*args):
        # last positional argument of every zp_* function is the prime
        return fast(*args) if args[-1] < _COMPILED_P_LIMIT else pure(*args)

    run.__name__ = pure.__name__
    return run


if HAVE_COMPILED_CORE:
    zp_mul = _dispatch(_impl.zp_mul, _pure.zp_mul)
    zp_divmod = _dispatch(_impl.zp_divmod, _pure.zp_divmod)
    zp_gcd = _dispatch(_impl.zp_gcd, _pure.zp_gcd)
    zp_powmod = _dispatch(_impl.zp_powmod, _pure.zp_powmod)
    build_tables = _impl.build_tables
    count_units_range = _impl.count_units_range
else:
    zp_mul = _pure.zp_mul
    zp_divmod = _pure.zp_divmod
    zp_gcd = _pure.zp_gcd
    zp_powmod = _pure.zp_powmod
    build_tables = _pure.build_tables
    count_units_range = _pure.count_units_range

IMPLEMENTATION = "compiled" if HAVE_COMPILED_CORE else "pure-python"
