"""Generators for the standard test families."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .scheme import AssociationScheme, verify_scheme

FAMILIES = ("binary-group", "hamming", "cycle")


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class FixtureSpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        f, p = self.family, self.params
        if f == "hamming":
            if p.get("q", 0) < 2 or p.get("n", 0) < 1:
                raise FixtureError("hamming needs n >= 1 and q >= 2")
        elif f == "cycle":
            if p.get("n", 0) < 3:
                raise FixtureError("cycle needs n >= 3")
        elif f == "binary-group":
            if not 1 <= p.get("m", 0) <= 10:
                raise FixtureError("binary-group needs 1 <= m <= 10")
        else:
            raise FixtureError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")

    def label(self) -> str:
        return self.family + "(" + ",".join(f"{k}={v}" for k, v in sorted(self.params.items())) + ")"


def hamming_relations(n: int, q: int) -> np.ndarray:
    words = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)
    return (words[:, None, :] != words[None, :, :]).sum(axis=2)


def cycle_relations(n: int) -> np.ndarray:
    g = np.arange(n)
    diff = (g[:, None] - g[None, :]) % n
    return np.minimum(diff, n - diff)


def relations_for(spec: FixtureSpec) -> np.ndarray:
    if spec.family == "hamming":
        return hamming_relations(spec.params["n"], spec.params["q"])
    if spec.family == "cycle":
        return cycle_relations(spec.params["n"])
    m = spec.params["m"]
    g = np.arange(2 ** m)
    return g[:, None] ^ g[None, :]


def generate_fixture(spec: FixtureSpec) -> AssociationScheme:
    if spec.family == "binary-group":
        from .group_scheme import build_group_scheme
        return build_group_scheme(spec.params["m"])
    return verify_scheme(relations_for(spec))


def hamming(n: int, q: int = 2) -> AssociationScheme:
    return generate_fixture(FixtureSpec("hamming", {"n": n, "q": q}))


def cycle(n: int) -> AssociationScheme:
    return generate_fixture(FixtureSpec("cycle", {"n": n}))


def binary_group(m: int) -> AssociationScheme:
    return generate_fixture(FixtureSpec("binary-group", {"m": m}))
