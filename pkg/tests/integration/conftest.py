import pytest
import toml
from fastapi.testclient import TestClient

from moby.__main__ import create_app
from moby.config import MobyConfig


@pytest.fixture
def temp_workspace(tmp_path):
    """Creates a temporary workspace directory with a moby.toml."""
    workspace = tmp_path / "moby_workspace"
    workspace.mkdir()
    with open(workspace / "moby.toml", "w") as f:
        toml.dump({"solver": {"timeout": 30.0}}, f)
    return workspace


@pytest.fixture
def test_config(temp_workspace):
    config = MobyConfig(workspace_path=temp_workspace)
    config.load_workspace_config()
    return config


@pytest.fixture
def client(test_config):
    """Returns a TestClient whose artifacts land in the temp workspace."""
    yield TestClient(create_app(test_config))


@pytest.fixture
def bare_client():
    """Returns a TestClient without workspace."""
    yield TestClient(create_app())
