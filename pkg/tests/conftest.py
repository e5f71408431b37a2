from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.diag")


def fixture_text(name: str) -> str:
    return (FIXTURES / f"{name}.diag").read_text()


def load(name: str):
    from kbdiag.diagram import parse_diagram

    return parse_diagram(fixture_text(name))


@pytest.fixture(name="load")
def _load_fixture():
    return load


@pytest.fixture(name="fixture_text")
def _fixture_text_fixture():
    return fixture_text
