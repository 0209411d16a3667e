"""Dense group Fourier transform: the quadratic-cost oracle every fast path is checked against."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import Sequence

import numpy as np

from .groups import AbelianGroup, Coords, character_phases

# Largest group order for which the full transform matrix is materialised.
DENSE_CAP = 4096

# Row-block size target for the streaming path above the cap, in matrix entries.
_STREAM_BLOCK_ENTRIES = 1 << 23


@dataclass(frozen=True)
class FourierMatrix:
    """The unitary F with F[g, k] = chi_g(k) / sqrt(|G|)."""

    group: AbelianGroup
    entries: np.ndarray


def _as_vector(f: Sequence[complex] | np.ndarray, length: int) -> np.ndarray:
    vec = np.asarray(f, dtype=np.complex128)
    if vec.shape != (length,):
        raise ValueError(f"vector has shape {vec.shape}, expected ({length},)")
    if not np.all(np.isfinite(vec)):
        raise ValueError("vector contains NaN or Inf entries")
    return vec


def _coords(group: AbelianGroup, k: int | Sequence[int]) -> Coords:
    if isinstance(k, (int, np.integer)):
        return group.coords_of(int(k))
    return group.validate_coords(k)


def _phase_block(group: AbelianGroup, rows: np.ndarray) -> np.ndarray:
    # Integer phase numerators P[g, k] = sum_i g_i k_i (lcm/m_i) mod lcm for the given row indices.
    # Magnitudes stay below 2**53, so the float matmul is exact before reduction.
    table = group.coords_table
    weighted = table[rows].astype(np.float64) * np.asarray(group.char_weights, dtype=np.float64)
    raw = weighted @ table.T.astype(np.float64)
    return np.remainder(raw.astype(np.int64), group.lcm)


@lru_cache(maxsize=2)
def _cached_entries(moduli: Coords) -> np.ndarray:
    group = AbelianGroup(moduli)
    phases = _phase_block(group, np.arange(group.order))
    entries = np.exp((2j * np.pi / group.lcm) * phases) / sqrt(group.order)
    entries.setflags(write=False)
    return entries


def dense_fourier_matrix(group: AbelianGroup, *, cap: int = DENSE_CAP) -> FourierMatrix:
    """Materialise the full transform matrix (refuses orders above the cap)."""
    if group.order > cap:
        raise ValueError(f"group order {group.order} exceeds the dense matrix cap {cap}")
    return FourierMatrix(group, _cached_entries(group.moduli))


def apply_dense(group: AbelianGroup, f: Sequence[complex] | np.ndarray, *, cap: int = DENSE_CAP) -> np.ndarray:
    """Transform by direct summation: out[k] = (1/sqrt(|G|)) sum_g chi_k(g) f(g).

    Below the cap the cached matrix is used; above it rows are streamed in
    blocks, each row summed in a fixed order.
    """
    vec = _as_vector(f, group.order)
    if group.order <= cap:
        return _cached_entries(group.moduli) @ vec
    out = np.empty(group.order, dtype=np.complex128)
    block = max(1, _STREAM_BLOCK_ENTRIES // group.order)
    scale = 1.0 / sqrt(group.order)
    for start in range(0, group.order, block):
        rows = np.arange(start, min(start + block, group.order))
        phases = _phase_block(group, rows)
        out[rows] = (np.exp((2j * np.pi / group.lcm) * phases) @ vec) * scale
    return out


def fourier_basis_state(group: AbelianGroup, k: int | Sequence[int]) -> np.ndarray:
    """The unit vector with components conj(chi_k(g)) / sqrt(|G|); the transform maps it to basis k."""
    coords = _coords(group, k)
    phases = character_phases(group, coords)
    return np.exp((-2j * np.pi / group.lcm) * phases) / sqrt(group.order)


def shift_vector(group: AbelianGroup, k: int | Sequence[int], f: Sequence[complex] | np.ndarray) -> np.ndarray:
    """Permute components by translation: out[g + k] = f[g].  Exact, no arithmetic on values."""
    vec = _as_vector(f, group.order)
    coords = np.asarray(_coords(group, k), dtype=np.int64)
    moduli = np.asarray(group.moduli, dtype=np.int64)
    weights = np.asarray(group.weights, dtype=np.int64)
    shifted = ((group.coords_table + coords) % moduli) @ weights
    out = np.empty_like(vec)
    out[shifted] = vec
    return out
