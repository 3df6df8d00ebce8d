"""Run only the acceptance gate and show its PASS/FAIL summary."""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    root = Path(__file__).resolve().parent.parent
    sys.exit(pytest.main(["-q", str(root / "tests" / "test_acceptance.py")]))
