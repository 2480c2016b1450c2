"""Draw-down criticality analysis: python bindings for the C++ core."""

try:
    from ._ddcrit import *  # noqa: F401,F403
    from ._ddcrit import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # Development layout: the extension is on sys.path next to the build
    # tree rather than inside the package.
    from _ddcrit import *  # noqa: F401,F403
