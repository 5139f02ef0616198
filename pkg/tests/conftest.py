"""Shared fixtures."""

from __future__ import annotations

import pytest

from edge_transition.expansion import KernelExpansion, assemble_kernel_expansion
from edge_transition.specfun import EvalContext


@pytest.fixture()
def ctx() -> EvalContext:
    return EvalContext(precision_bits=128)


@pytest.fixture()
def fine_ctx() -> EvalContext:
    return EvalContext(precision_bits=256)


@pytest.fixture(scope="session")
def expansion2() -> KernelExpansion:
    return assemble_kernel_expansion(2)
