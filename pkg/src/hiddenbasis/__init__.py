"""Weak Schur sampling for qubits in an unknown basis and order."""

__version__ = "0.1.0"
