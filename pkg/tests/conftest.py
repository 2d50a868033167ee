from __future__ import annotations

from functools import lru_cache

import pytest

from coxkl import CoxeterSystem, HeckeAlgebra


@lru_cache(maxsize=None)
def _system(code: str) -> CoxeterSystem:
    return CoxeterSystem.from_type(code)


@lru_cache(maxsize=None)
def _algebra(code: str) -> HeckeAlgebra:
    return HeckeAlgebra(_system(code))


@pytest.fixture(scope="session")
def system():
    """Factory for shared, cached Coxeter systems keyed by type code."""
    return _system


@pytest.fixture(scope="session")
def algebra():
    """Factory for shared Hecke algebras (their KL memo accumulates)."""
    return _algebra
