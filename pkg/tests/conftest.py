"""Shared test configuration."""

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: multi-second eigenvalue solves and pipeline runs")
