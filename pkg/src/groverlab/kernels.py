"""Backend selection for the iteration kernel.

The compiled extension is preferred when importable; the numpy fallback is
behaviourally identical.  ``GROVERLAB_KERNEL`` forces a choice: ``cython``,
``python`` or ``auto`` (default).
"""

import os

_choice = os.environ.get("GROVERLAB_KERNEL", "auto").strip().lower()
if _choice not in {"auto", "cython", "python"}:
    raise ValueError(
        f"GROVERLAB_KERNEL must be 'auto', 'cython' or 'python', got {_choice!r}"
    )

if _choice == "python":
    from . import _kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _choice == "cython":
            raise
        from . import _kernel_py as _impl

        BACKEND = "python"

run_phases_batch = _impl.run_phases_batch


def available_backends():
    """Names of importable kernel backends, compiled one first."""
    names = []
    try:
        from . import _kernel_cy  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    names.append("python")
    return tuple(names)
