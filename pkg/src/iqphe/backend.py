"""Kernel backend selection.

The hot kernels (Hermitian eigenvalues, conjugations) exist twice: a
Cython extension ``iqphe._core`` and a numpy fallback ``iqphe._core_py``.
By default the compiled one is used when importable. Set

    IQPHE_BACKEND=python    force the numpy fallback
    IQPHE_BACKEND=compiled  require the extension (ImportError if missing)

``benchmarks/bench_backend.py`` compares the two.
"""

import os

_choice = os.environ.get("IQPHE_BACKEND", "auto").lower()

if _choice == "python":
    from . import _core_py as _impl
elif _choice == "compiled":
    from . import _core as _impl  # type: ignore[no-redef]
elif _choice == "auto":
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _core_py as _impl
else:
    raise ValueError(
        f"IQPHE_BACKEND={_choice!r}: expected 'auto', 'python' or 'compiled'"
    )

BACKEND = _impl.BACKEND

eigvalsh = _impl.eigvalsh
conj_diag = _impl.conj_diag
conj_pauli = _impl.conj_pauli
