import pytest
from fastapi.testclient import TestClient
from typer.testing import CliRunner

from app.main import app
from app.model.comb_map_model import CombMap
from app.schema.plan_schema import BaseTemplate
from app.services.surgery_service import instantiate_base

# Voisins de chaque sommet de l'octaèdre (+x, -x, +y, -y, +z, -z), sens trigonométrique
OCTAHEDRON_ROTATIONS = [
    [2, 4, 3, 5],
    [2, 5, 3, 4],
    [4, 0, 5, 1],
    [4, 1, 5, 0],
    [0, 2, 1, 3],
    [0, 3, 1, 2],
]


@pytest.fixture(scope="session")
def client():
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture(scope="function")
def runner():
    return CliRunner()


@pytest.fixture(scope="function")
def circles_certificate():
    return instantiate_base(BaseTemplate.circles())


@pytest.fixture(scope="function")
def discs_certificate():
    return instantiate_base(BaseTemplate.discs(1))


@pytest.fixture(scope="function")
def annulus_certificate():
    return instantiate_base(BaseTemplate.annulus(1))


@pytest.fixture(scope="function")
def octahedron():
    return CombMap.from_rotation_system(OCTAHEDRON_ROTATIONS)
