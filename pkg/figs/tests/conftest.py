import subprocess
import sys

import pytest

SWEEPS = {
    "bang": ["--model", "bang", "--n", "10", "--t-min", "-0.2", "--t-max", "1.2",
             "--steps", "281"],
    "cyclic": ["--model", "cyclic", "--n", "8", "--t-min", "-1", "--t-max", "1",
               "--steps", "201"],
    "crunchbang": ["--model", "crunchbang", "--t-min", "-0.6", "--t-max", "0.6",
                   "--steps", "241"],
}


@pytest.fixture(scope="session")
def golden_csvs(tmp_path_factory):
    """Flow CSVs produced by the scanning tool's own command line."""
    root = tmp_path_factory.mktemp("golden")
    paths = {}
    for kind, args in SWEEPS.items():
        out = root / f"flow_{kind}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "cryptoherm", "scan", *args, "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        paths[kind] = str(out)
    return paths
