"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python implementation.  Set ``ACTPURE_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _pykernels

IMPLEMENTATION = "python"
hom_search = _pykernels.hom_search
unextendable = _pykernels.unextendable

if not os.environ.get("ACTPURE_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        IMPLEMENTATION = "cython"
        hom_search = _ckernels.hom_search
        unextendable = _ckernels.unextendable
