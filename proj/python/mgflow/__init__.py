"""Python interface to the matrix-group flow library.

The compiled core lives in the ``_mgflow`` extension; this package re-exports
its operations.  When built with scikit-build-core the extension is installed
inside the package; in a plain CMake build it sits on ``PYTHONPATH``.
"""

try:
    from ._mgflow import *          # noqa: F401,F403  (installed layout)
    from ._mgflow import __doc__ as _core_doc
except ImportError:
    from _mgflow import *           # noqa: F401,F403  (build-tree layout)
    from _mgflow import __doc__ as _core_doc

__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
__version__ = "1.0.0"
