"""Norm compressions of block-partitioned PSD matrices.

Thin re-export of the compiled extension.  Installed wheels carry the
extension inside this package; in a plain CMake build tree it sits on
PYTHONPATH next to it instead.
"""

try:
    from ._blocknorm import *  # noqa: F401,F403
    from ._blocknorm import __doc__  # noqa: F401
except ImportError:
    from _blocknorm import *  # noqa: F401,F403
    from _blocknorm import __doc__  # noqa: F401
