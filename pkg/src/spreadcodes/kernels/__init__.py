"""Hot kernels with a compiled core and a pure-Python fallback.

The Cython extension ``_ckernels`` is used when it was built; otherwise, or
when ``SPREADCODES_PURE_PYTHON=1`` is set, ``_pykernels`` takes over.  Both
expose the same functions over raw packed-int rows and produce identical
results; the backend can also be switched at runtime with :func:`use_backend`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels

try:
    if os.environ.get("SPREADCODES_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend() -> str:
    return _active.BACKEND


def set_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}") from None


@contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _tab(field):
    key = _active.BACKEND
    tab = field._kernel_tables.get(key)
    if tab is None:
        tab = field._kernel_tables[key] = _active.make_tables(field.tables)
    return tab


def rref(rows, field):
    return _active.rref(rows, _tab(field))


def rank(rows, field):
    return _active.rank(rows, _tab(field))


def det(rows, field):
    return _active.det(rows, _tab(field))


def matmul(a, b, field):
    return _active.matmul(a, b, _tab(field))


def offdiag_minor_search(rows, max_size, field):
    return _active.offdiag_minor_search(rows, max_size, _tab(field))


def poly_add(a, b, field):
    return _active.poly_add(a, b, _tab(field))


def poly_sub(a, b, field):
    return _active.poly_sub(a, b, _tab(field))


def poly_mul(a, b, field):
    return _active.poly_mul(a, b, _tab(field))


def poly_divmod(a, b, field):
    return _active.poly_divmod(a, b, _tab(field))


def poly_mulmod(a, b, m, field):
    return _active.poly_mulmod(a, b, m, _tab(field))


def poly_gcd(a, b, field):
    return _active.poly_gcd(a, b, _tab(field))


def poly_eval(a, x, field):
    return _active.poly_eval(a, x, _tab(field))


def scan_roots(a, field):
    return _active.scan_roots(a, _tab(field))
