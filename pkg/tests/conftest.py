import json
from pathlib import Path

import numpy as np
import pytest

from schemedual import APPROX, EXACT
from schemedual.fixtures import binary_group, cycle, hamming
from schemedual.spectral import decompose, krein_parameters

GOLDEN = Path(__file__).parent / "golden"


def load_golden(name):
    return json.loads((GOLDEN / name).read_text())


def x2_relations():
    # relation index of (y, z) in X^(2) is y XOR z under 00<01<10<11
    return np.array([[y ^ z for z in range(4)] for y in range(4)])


def analyzed(s, tol=EXACT):
    sp = decompose(s, tol=tol)
    return s, sp, krein_parameters(sp, s.params)


# (label, scheme factory, rational character table?)
FIXTURES = (
    [(f"X{m}", lambda m=m: binary_group(m), True) for m in range(1, 5)]
    + [(f"H{n}", lambda n=n: hamming(n, 2), True) for n in range(1, 5)]
    + [("C5", lambda: cycle(5), False), ("C6", lambda: cycle(6), True), ("C7", lambda: cycle(7), False)]
)


def fixture_cases():
    """(label, factory, tol) for every fixture in every mode it supports."""
    out = []
    for label, make, rational in FIXTURES:
        if rational:
            out.append(pytest.param(make, EXACT, id=f"{label}-exact"))
        out.append(pytest.param(make, APPROX, id=f"{label}-approx"))
    return out
