"""Run the acceptance criteria and print one PASS/FAIL line each."""

import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"]))
