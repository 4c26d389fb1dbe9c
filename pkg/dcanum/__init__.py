# flake8: noqa: F401
from ._version import __version__, __version_tuple__
