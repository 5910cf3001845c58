"""Shared fixtures: the standard value algebras and small finite-set models."""

import json
from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from qhyper.algebra import FiniteAlgebra, boolean_algebra, mo2, o6, two_chain
from qhyper.base import BaseKind, BaseObject, finset
from qhyper.hyperdoctrine import Model


@pytest.fixture
def two() -> FiniteAlgebra:
    return two_chain()


@pytest.fixture
def mo() -> FiniteAlgebra:
    return mo2()


@pytest.fixture
def benzene() -> FiniteAlgebra:
    return o6()


@pytest.fixture
def bool2() -> FiniteAlgebra:
    return boolean_algebra(2)


@pytest.fixture
def X() -> BaseObject:
    return finset(["x1", "x2"], "X")


@pytest.fixture
def Y() -> BaseObject:
    return finset(["y1"], "Y")


@pytest.fixture
def make_model() -> Callable[..., Model]:
    def build(omega: FiniteAlgebra, **objects: int) -> Model:
        named = {
            name: finset([f"{name.lower()}{i + 1}" for i in range(n)], name)
            for name, n in objects.items()
        }
        return Model(BaseKind.FINSET, omega, objects=named, name="test")

    return build


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    def write(name: str, data: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return write


@pytest.fixture
def mo2_document() -> Dict[str, Any]:
    """MO2 written out as an algebra file, order only."""
    labels = ["0", "a", "a'", "b", "b'", "1"]
    leq = [[i == j or i == 0 or j == 5 for j in range(6)] for i in range(6)]
    return {"carrier": labels, "leq": leq, "ortho": [5, 2, 1, 4, 3, 0], "class": "orthomodular"}
