from __future__ import annotations

import math

import pytest

from ghz_eraser.core import DensityMatrix, PureState
from ghz_eraser.optics import load_crystal
from ghz_eraser.protocol import bell_state, ghz_state, separable_mixture_states, xi_states

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def ghz() -> PureState:
    return ghz_state()


@pytest.fixture
def phi_plus() -> PureState:
    return bell_state("plus")


@pytest.fixture
def phi_minus() -> PureState:
    return bell_state("minus")


@pytest.fixture
def xi_plus() -> PureState:
    return xi_states()[0]


@pytest.fixture
def mixture() -> DensityMatrix:
    return DensityMatrix.mixture(separable_mixture_states())


@pytest.fixture
def calcite():
    return load_crystal("calcite")


@pytest.fixture
def fused_silica():
    return load_crystal("fused-silica")
