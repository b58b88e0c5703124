from __future__ import annotations

import dataclasses
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
HEADS = ("1001C", "10011C", "100111C", "1001111C", "10011001C")


@dataclasses.dataclass(frozen=True)
class Table1Row:
    head: str
    itinerary: str
    cyclic: str


@dataclasses.dataclass(frozen=True)
class Table2Row:
    head: str
    period: int
    a: float
    itinerary: str


def _rows(name: str) -> list[list[str]]:
    lines = (DATA / name).read_text().splitlines()
    return [line.split() for line in lines if line and not line.startswith("#")]


def load_table1() -> list[Table1Row]:
    return [Table1Row(*r) for r in _rows("table1.txt")]


def load_table2() -> list[Table2Row]:
    return [Table2Row(h, int(p), float(a), w) for h, p, a, w in _rows("table2.txt")]


@pytest.fixture(scope="session")
def table1() -> list[Table1Row]:
    return load_table1()


@pytest.fixture(scope="session")
def table2() -> list[Table2Row]:
    return load_table2()


@pytest.fixture(scope="session")
def chains():
    from henonbraids.cabling import generate_chain

    return {head: generate_chain(head, 3) for head in HEADS}


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
