"""Tail estimates for the distributions of sigma(n)/n and n/phi(n)."""

try:
    from . import _tdl
except ImportError:  # in-tree build, extension found on PYTHONPATH
    import _tdl

globals().update({k: v for k, v in vars(_tdl).items() if not k.startswith("__")})

__version__ = "0.1.0"
