import pytest

from godbersen_lab.engine import mixed_volume_profile
from godbersen_lab.zoo import default_zoo, generate


@pytest.fixture(scope="session")
def zoo_bodies():
    """The built-in zoo (dims 2..5), generated once per session."""
    return {spec.label(): generate(spec) for spec in default_zoo()}


@pytest.fixture(scope="session")
def zoo_profiles(zoo_bodies):
    """Mixed-volume profiles of the zoo, shared across test modules."""
    return {label: mixed_volume_profile(body)
            for label, body in zoo_bodies.items()}
