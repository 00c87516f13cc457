import subprocess
import sys

import pytest


def engine(args, cwd):
    """Invoke the simulation engine CLI, the only interface this package consumes."""
    result = subprocess.run(
        [sys.executable, "-m", "flatqst.cli", *args],
        cwd=cwd, capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
    return result.stdout


@pytest.fixture(scope="session")
def results_dir(tmp_path_factory):
    """Small but complete results directory produced by the engine CLI."""
    out = tmp_path_factory.mktemp("results")
    engine(
        ["trace", "--N", "4", "--W", "0.25", "--seed", "3", "--window", "400",
         "--out", str(out / "trace.csv")],
        cwd=out,
    )
    for tag, W in (("a", 0.15), ("b", 0.35)):
        engine(
            ["ensemble", "--N", "4", "--W", str(W), "--seed", "9", "--samples", "25",
             "--window", "300", "--out", str(out / f"records_{tag}.csv")],
            cwd=out,
        )
    engine(
        ["sweep", "--N-list", "4", "5", "--W-list", "0.15", "0.3", "--seed", "5",
         "--samples", "12", "--window", "300", "--out", str(out / "sweep.csv")],
        cwd=out,
    )
    return out
