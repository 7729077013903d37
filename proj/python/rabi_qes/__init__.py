"""Quasi-exact Juddian solutions of the Rabi Hamiltonian."""

try:
    from ._rabi_qes import *  # noqa: F401,F403
    from ._rabi_qes import __doc__  # noqa: F401
except ImportError:
    # In-tree use: the extension sits in the CMake build directory.
    import os
    import sys

    _ext_dir = os.environ.get("RABI_QES_EXTENSION_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _rabi_qes import *  # noqa: F401,F403

__version__ = "0.1.0"
