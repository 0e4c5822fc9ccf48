"""Test module for entry_points.py.

This module check that the command line entry point exists and functions as expected
"""

import os
import shutil
import subprocess

import feeder_scheduler as fs


def test_entry_point_existence():
    """Check that the entry points exist."""

    exit_status = os.system("feeder_scheduler --help")
    assert exit_status == 0


def test_version():
    """Check --version information is displayed correctly."""
    expected_version = fs.__version__
    result = subprocess.run(
        [shutil.which("feeder_scheduler"), "--version"], capture_output=True, text=True
    )

    assert result.returncode == 0
    assert result.stdout == f"feeder_scheduler {expected_version}\n"
