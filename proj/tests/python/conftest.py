import json
import os
import subprocess

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("HFLAB_CLI")
    if not path:
        pytest.skip("HFLAB_CLI not set")

    def run(*args, fmt="json"):
        proc = subprocess.run([path, "--format", fmt, *args], capture_output=True, text=True)
        doc = json.loads(proc.stdout) if fmt == "json" and proc.returncode != 2 else None
        return proc, doc

    return run


@pytest.fixture(scope="session")
def schema():
    path = os.environ.get("HFLAB_SCHEMA")
    if not path:
        path = os.path.join(os.path.dirname(__file__), "..", "..", "docs", "report.schema.json")
    with open(path) as f:
        return json.load(f)
