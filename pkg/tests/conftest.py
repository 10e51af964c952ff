import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Make tests/oracles.py importable regardless of invocation directory.
sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture()
def store():
    from semcausal.quad_store import QuadStore

    return QuadStore()


@pytest.fixture()
def minter():
    from semcausal.ids import IdMinter

    return IdMinter(deterministic=True)


@pytest.fixture(scope="module")
def invasion():
    """Deterministic invasion-map fixture shared within a module."""
    from semcausal.fixtures import build_invasion_map
    from semcausal.ids import IdMinter
    from semcausal.quad_store import QuadStore

    store = QuadStore()
    built = build_invasion_map(store, IdMinter(deterministic=True))
    built["store"] = store
    return built
