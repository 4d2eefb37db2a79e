"""Semisimplification of representation categories: exact linear algebra,
finite group modules, decomposition, based rings and the quantum-group case."""

__version__ = "0.1.0"
