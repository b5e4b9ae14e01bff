import pytest

from ifcaudit.geomgen import generate_geometry_suite
from ifcaudit.schema import SchemaVersion

FIXED_TIMESTAMP = "2020-01-01T00:00:00"


@pytest.fixture(scope="session")
def suite_2x3():
    return generate_geometry_suite(SchemaVersion.IFC2X3, timestamp=FIXED_TIMESTAMP)


@pytest.fixture(scope="session")
def suite_ifc4():
    return generate_geometry_suite(SchemaVersion.IFC4, timestamp=FIXED_TIMESTAMP)


@pytest.fixture(scope="session")
def proxies_by_slot(suite_2x3):
    from ifcaudit.geomcheck import suite_proxies

    graph, _ = suite_2x3
    return {p.attr(3).value: p for p in suite_proxies(graph)}
