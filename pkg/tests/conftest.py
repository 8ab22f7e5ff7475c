"""Shared fixtures: the catalog battery with precomputed pseudoinverses."""

from __future__ import annotations

from dataclasses import dataclass

import pytest

import fiberbeta as fb


@dataclass(frozen=True)
class Prepared:
    fiber: fb.SpecialFiber
    M: fb.RatMatrix
    P: fb.PseudoinverseResult


def prepare(fiber: fb.SpecialFiber) -> Prepared:
    M = fb.build_laplacian(fiber)
    return Prepared(fiber=fiber, M=M, P=fb.pseudoinverse(M))


@pytest.fixture(scope="session")
def battery():
    """Every catalog fiber with its intersection matrix and pseudoinverse."""
    return [prepare(f) for f in fb.acceptance_fibers()]


@pytest.fixture(scope="session")
def banana111():
    return prepare(fb.banana(1, 1, 1))


@pytest.fixture(scope="session")
def fermat50():
    return prepare(fb.fermat_fiber(5, 0))


@pytest.fixture(scope="session")
def fermat72():
    return prepare(fb.fermat_fiber(7, 2))


@pytest.fixture(scope="session")
def single_component():
    fiber = fb.SpecialFiber(
        name="irreducible(g=2)",
        components=(fb.Component("G", 1, 2, 0),),
        intersections={},
        genus=2,
    )
    return prepare(fiber)
