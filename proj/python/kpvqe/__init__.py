"""k.p band structures from a two-qubit subspace-search VQE."""

from ._kpvqe import (
    absorption,
    band_sweep,
    build_hamiltonian,
    decompose,
    eigh,
    load_material,
    make_kpath,
    qwc_partition,
)

__all__ = [
    "absorption",
    "band_sweep",
    "build_hamiltonian",
    "decompose",
    "eigh",
    "load_material",
    "make_kpath",
    "qwc_partition",
]
