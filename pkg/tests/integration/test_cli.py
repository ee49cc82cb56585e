"""
Integration tests for the filmpy CLI.
"""

import json
import os
import subprocess
import sys
from itertools import takewhile
from pathlib import Path

import pytest

SRC_DIR = Path(__file__).resolve().parents[2] / "src"


class TestCLI:
    """Integration tests for CLI commands."""

    def run_filmpy(self, args, cwd=None):
        """Run filmpy as a module with the source tree on the path."""
        env = dict(os.environ)
        env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(SRC_DIR), env.get("PYTHONPATH")]))
        return subprocess.run(
            [sys.executable, "-m", "filmpy"] + args,
            cwd=cwd,
            capture_output=True,
            text=True,
            env=env,
        )

    def test_version(self):
        """Test filmpy --version."""
        from filmpy import __version__

        result = self.run_filmpy(["--version"])
        assert result.returncode == 0
        assert "Version:" in result.stdout
        assert __version__ in result.stdout

    def test_help(self):
        """Test every command is listed in the help."""
        result = self.run_filmpy(["--help"])
        assert result.returncode == 0
        for command in ("converge", "tw", "finger", "meshdemo", "efficiency", "oracle"):
            assert command in result.stdout

    def test_oracle_speeds(self):
        """Test the shock speed table in data mode."""
        result = self.run_filmpy(["oracle", "--speeds", "--data"])
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "name\tvalue"
        assert lines[1].startswith("s (u-, u+)\t2.786")

    def test_meshdemo(self, tmp_path):
        """Test a coarse mesh demo writes its outputs."""
        out = tmp_path / "demo"
        result = self.run_filmpy(["meshdemo", "--h", "0.25", "--max-cycles", "2",
                                  "--out", str(out), "--agent"])
        assert result.returncode == 0, result.stderr
        lines = result.stdout.splitlines()[1:]
        payload = json.loads("\n".join(takewhile(lambda line: not line.startswith("["), lines)))
        assert [item["axis"] for item in payload["items"]] == ["x", "z"]
        for name in ("mesh.vtk", "density_ratios.csv", "summary.yaml", "run_config.toml", "run.log"):
            assert (out / name).exists()

    def test_bad_config_exits_2(self, tmp_path):
        """Test an unknown config key fails with exit code 2."""
        config = tmp_path / "run.toml"
        config.write_text("timestep = 0.1\n")
        result = self.run_filmpy(["tw", "--config", str(config), "--out", str(tmp_path / "tw")])
        assert result.returncode == 2
        assert "Unknown configuration key 'timestep'" in result.stderr

    def test_invalid_value_exits_2(self, tmp_path):
        """Test a negative time step fails with exit code 2."""
        result = self.run_filmpy(["finger", "--dt", "-1", "--out", str(tmp_path / "f")])
        assert result.returncode == 2
        assert "[ERROR]" in result.stderr

    @pytest.mark.parametrize("argv", [["tw", "--case", "4"], ["nosuchcommand"]])
    def test_usage_errors(self, argv):
        """Test argparse rejects bad commands and choices."""
        result = self.run_filmpy(argv)
        assert result.returncode == 2
        assert "usage" in result.stderr
