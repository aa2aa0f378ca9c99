import pathlib
import subprocess
import sys

import pytest

DEMOS = pathlib.Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("name", ["roots_and_constants", "collection", "homotopes", "schur", "verification"])
def test_demo_runs(name):
    proc = subprocess.run([sys.executable, str(DEMOS / f"{name}.py")], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip()
