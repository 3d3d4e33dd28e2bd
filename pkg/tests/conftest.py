from __future__ import annotations

import numpy as np
import pytest

from mfc.catalog import load_builtin
from mfc.fusion_ring import FusionRing


def ring(labels: str, products: dict, name: str = "") -> FusionRing:
    table = {tuple(k.split("*")): v for k, v in products.items()}
    return FusionRing.from_products(labels.split(), table, name=name)


VECT = FusionRing(("1",), np.ones((1, 1, 1), dtype=np.int64), name="Vect_C")
VEC_Z2 = ring("1 X", {"X*X": "1"})
FIB = ring("1 X", {"X*X": "1+X"}, "Fib")
ISING = ring("1 X Y", {"X*X": "1", "X*Y": "Y", "Y*Y": "1+X"}, "Ising")


@pytest.fixture(scope="session")
def rings() -> dict[str, FusionRing]:
    ids = ["z2z2_product", "vec_z4", "su2_3", "fib_fib", "psu2_7", "su5_1", "su2_4", "psu2_9", "psu3_4"]
    out = {i: load_builtin(i).ring for i in ids}
    out["z2z2"] = out.pop("z2z2_product")
    return out


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
