"""Select the compiled kernel module when it is importable, else the Python twin.

Set ``RIBBONX_PURE_PYTHON=1`` to force the fallback.
"""

import os

core = None
if not os.environ.get("RIBBONX_PURE_PYTHON"):
    try:
        from . import _core as core
    except ImportError:
        core = None
if core is None:
    from . import _core_py as core

BACKEND = core.BACKEND
