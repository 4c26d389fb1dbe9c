# flake8: noqa: F401
from . import ppid
