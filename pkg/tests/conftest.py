import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def tables():
    """(h1, h0) on the standard grid; about a minute, shared by every test."""
    from diamond7.htable import standard_tables
    return standard_tables()


@pytest.fixture(scope="session")
def l1_rep():
    from diamond7.crossval import l1_representation
    return l1_representation()


@pytest.fixture(scope="session")
def full_report():
    """Default-config run of every stage, as JSON."""
    from diamond7.pipeline import run_full_verification
    return run_full_verification().to_json()
