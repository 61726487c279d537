from pathlib import Path

import pytest

from ordep import Schema, load_csv

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def taxes_schema() -> Schema:
    return Schema.from_json((DATA / "taxes.schema.json").read_text())


@pytest.fixture(scope="session")
def taxes(taxes_schema):
    """Six employee rows over ID, year, position, bin, salary,
    percentage, tax, group, subgroup."""
    return load_csv(DATA / "taxes.csv", taxes_schema)


@pytest.fixture(scope="session")
def taxes_csv() -> str:
    return str(DATA / "taxes.csv")


@pytest.fixture(scope="session")
def taxes_schema_file() -> str:
    return str(DATA / "taxes.schema.json")
