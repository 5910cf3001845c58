"""qhyper: a finite-model workbench for quantum hyperdoctrines."""

__version__ = "0.1.0"
