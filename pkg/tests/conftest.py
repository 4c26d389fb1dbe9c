import atexit
import os
import shutil
import tempfile
import time

import pytest

TMPDIR = tempfile.mkdtemp(prefix=time.strftime(
    "dcanum_test_%H.%M_"))

#: environment variable that enables full-size training tests
LONG_TESTS_ENV = "DCANUM_LONG_TESTS"


def pytest_configure(config):
    """Temporary directory, markers and JIT setting for the test session"""
    tempfile.tempdir = TMPDIR
    atexit.register(shutil.rmtree, TMPDIR, ignore_errors=True)
    config.addinivalue_line(
        "markers",
        f"long: full-size training or timing test (set {LONG_TESTS_ENV})")
    # Disable JIT compiler during testing for coverage
    os.environ.setdefault("NUMBA_DISABLE_JIT", "1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get(LONG_TESTS_ENV):
        return
    skip_long = pytest.mark.skip(reason=f"set {LONG_TESTS_ENV} to run")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)
