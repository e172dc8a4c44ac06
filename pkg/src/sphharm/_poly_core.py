"""Backend selection for the polynomial term kernels.

Imports the compiled kernels when the extension was built, otherwise the
pure-Python fallback.  Both produce identical exact results; the choice
only affects speed.  Set ``SPHHARM_PURE_PYTHON=1`` to force the fallback
(used by the backend-parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("SPHHARM_PURE_PYTHON"):
    from sphharm import _poly_core_py as _impl

    BACKEND = "python"
else:
    try:
        from sphharm import _poly_core_cy as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from sphharm import _poly_core_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

add_terms = _impl.add_terms
sub_terms = _impl.sub_terms
neg_terms = _impl.neg_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
mul_monomial_terms = _impl.mul_monomial_terms
partial_terms = _impl.partial_terms
laplacian_terms = _impl.laplacian_terms
sphere_reduce_terms = _impl.sphere_reduce_terms
eval_terms = _impl.eval_terms
