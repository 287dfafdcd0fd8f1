import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks, excluded by default")


def pytest_collection_modifyitems(config, items):
    if config.getoption("-m"):
        return
    skip = pytest.mark.skip(reason="slow; run with -m slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
