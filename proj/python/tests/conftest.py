import itertools
import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("GCODES_CLI") or shutil.which("gcodes")
    if path is None:
        candidate = ROOT / "build" / "gcodes"
        if candidate.exists():
            path = str(candidate)
    if path is None:
        pytest.skip("gcodes binary not found; set GCODES_CLI")
    return path


@pytest.fixture(scope="session")
def schema():
    import json

    return json.loads((ROOT / "docs" / "graph_report.schema.json").read_text())


def prime_span(p, rows):
    """All vectors spanned by rows over the prime field GF(p)."""
    n = len(rows[0])
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(n)))
    return out
