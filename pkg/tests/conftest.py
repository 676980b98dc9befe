"""Shared fixtures for the test suite."""

import pytest

import reinhardt_lab as rl


@pytest.fixture(scope="session")
def nonconvex():
    return rl.builtin("nonconvex-model")


@pytest.fixture(scope="session")
def channel():
    return rl.builtin("infinite-type-channel")


@pytest.fixture(scope="session")
def ball3():
    return rl.builtin("ball3")


@pytest.fixture(scope="session")
def two_block():
    return rl.builtin("two-block-model")
