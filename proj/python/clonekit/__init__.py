"""Optimal cloning fidelities and their measure-and-prepare benchmarks."""

from ._clonekit import (
    CapExceeded,
    ConvergenceError,
    DomainError,
    angular_weight,
    clock,
    coherent,
    entangled,
    enumerate_partitions,
    finiteset,
    multinomial_weight,
    multiphase,
    oracle,
    run_cli,
    symmetric_dimension,
    verify,
)

__all__ = [
    "CapExceeded",
    "ConvergenceError",
    "DomainError",
    "angular_weight",
    "clock",
    "coherent",
    "entangled",
    "enumerate_partitions",
    "finiteset",
    "multinomial_weight",
    "multiphase",
    "oracle",
    "run_cli",
    "symmetric_dimension",
    "verify",
]
