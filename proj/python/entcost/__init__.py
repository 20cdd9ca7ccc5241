"""Entanglement measures, channel certificates and a variational Ef bound."""

from ._core import (
    ContractError,
    additivity_gap,
    bell_mix,
    bell_state,
    binary_entropy,
    choi_of_example,
    concurrence,
    constant_entanglement_check,
    eb_certify_choi,
    eb_certify_example,
    ec_bell_mix,
    ed_hashing,
    ef_two_qubit,
    ef_upper_bound,
    entropy_of_entanglement,
    partial_trace,
    partial_transpose,
    random_density,
    run_cli,
    ssa_check,
    subspace_basis,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
