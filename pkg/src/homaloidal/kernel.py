"""Select the compiled arithmetic kernel when available, else pure Python.

Set ``HOMALOIDAL_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("HOMALOIDAL_PURE_PYTHON"):
    from ._kernel_py import field_context, mul, reduce, sub_mul_shift

    BACKEND = "python"
else:
    try:
        from ._kernel import field_context, mul, reduce, sub_mul_shift

        BACKEND = "compiled"
    except ImportError:
        from ._kernel_py import field_context, mul, reduce, sub_mul_shift

        BACKEND = "python"

__all__ = ["BACKEND", "field_context", "mul", "reduce", "sub_mul_shift"]
