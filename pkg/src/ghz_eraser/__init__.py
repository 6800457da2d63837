"""Simulator for the GHZ disentanglement eraser and its calcite three-photon source."""

__version__ = "0.3.0"
