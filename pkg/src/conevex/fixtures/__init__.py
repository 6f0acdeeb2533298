"""Shipped example instances (INST-A, INST-B, INST-C)."""

from importlib import resources

FIXTURES = ("INST-A", "INST-B", "INST-C")


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files(__name__).joinpath(f"{name}.json").read_text()


def load_fixture(name: str):
    from ..instance_io import parse_instance

    return parse_instance(fixture_text(name))
