"""Hidden-stabiliser recovery by Fourier sampling.

A function table on a group is loaded into a two-register state, the value
register is read to leave a uniform coset state, and transform-then-measure
yields only labels whose character is trivial on the stabiliser.  Intersecting
those constraints in exact integer arithmetic recovers the stabiliser.  The
sampled label distribution does not depend on which coset survived the value
measurement, so on a coset of K it equals the distribution of the subgroup
state |K>: uniform over the labels annihilating K.  (With |K| = n inside a
group of order mn that is n/sqrt(mn) = 1/sqrt(m) of amplitude on each of the m
surviving labels, a unit-norm vector.)

The default sampling mode computes that exact distribution classically and
draws from it; full two-register simulation is kept as a cross-check path for
small groups.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dense import apply_dense
from .groups import (
    AbelianGroup,
    Subgroup,
    character_phases,
    coset_decompose,
    full_subgroup,
)
from .qft_circuit import apply_qft
from .simulator import STATE_CAP, QState, collapse_register

# Group order caps for the two sampling routes.
EXACT_CAP = 4096
SIMULATE_CAP = 256

MODES = ("exact", "simulate")

# A reconstruction is accepted once it has survived this many consecutive samples unchanged.
CONFIRMATION_WINDOW = 10


@dataclass(frozen=True)
class FunctionTable:
    """A function on a group, tabulated by element index; values are nonnegative integers."""

    group: AbelianGroup
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.group.order:
            raise ValueError(f"table has {len(values)} entries, group has order {self.group.order}")
        for v in values:
            if v < 0:
                raise ValueError(f"value {v} is negative; the value register encodes nonnegative integers")


@dataclass(frozen=True)
class StabilizerResult:
    subgroup: Subgroup
    samples_used: int
    labels_seen: tuple[int, ...]
    converged: bool


def stabilizer_bruteforce(f: FunctionTable) -> Subgroup:
    """All k with f(k + g) = f(g) for every g, by direct comparison."""
    group = f.group
    values = np.asarray(f.values, dtype=np.int64)
    table = group.coords_table
    moduli = np.asarray(group.moduli, dtype=np.int64)
    weights = np.asarray(group.weights, dtype=np.int64)
    members = []
    for k in range(group.order):
        shifted = ((table + table[k]) % moduli) @ weights
        if np.array_equal(values[shifted], values):
            members.append(k)
    return Subgroup(group, tuple(members))


def check_nondegenerate(f: FunctionTable, stabilizer: Subgroup) -> bool:
    """True iff f is one-to-one on cosets: constant within each coset, distinct across cosets."""
    if stabilizer.parent != f.group:
        raise ValueError("stabiliser belongs to a different group")
    dec = coset_decompose(f.group, stabilizer)
    values = np.asarray(f.values, dtype=np.int64)
    rep_values = values[np.asarray(dec.representatives, dtype=np.int64)]
    if not np.array_equal(values, rep_values[dec.coset_of]):
        return False
    return len(set(rep_values.tolist())) == len(dec.representatives)


def _register_widths(f: FunctionTable) -> tuple[int, int]:
    group_bits = max(1, (f.group.order - 1).bit_length())
    value_bits = max(1, max(f.values).bit_length())
    if group_bits + value_bits > STATE_CAP:
        raise ValueError(
            f"register widths {group_bits}+{value_bits} exceed the {STATE_CAP}-qubit cap"
        )
    return group_bits, value_bits


def build_function_state(f: FunctionTable) -> QState:
    """The uniform two-register state: group register in the low qubits, value register above."""
    group_bits, value_bits = _register_widths(f)
    amps = np.zeros(1 << (group_bits + value_bits), dtype=np.complex128)
    scale = 1.0 / np.sqrt(f.group.order)
    for g, v in enumerate(f.values):
        amps[(v << group_bits) | g] = scale
    return QState(group_bits + value_bits, amps)


def sample_coset_state(f: FunctionTable, rng: np.random.Generator) -> tuple[int, QState]:
    """Read the value register; returns the observed value and the surviving group-register state.

    Degenerate tables (equal values on distinct cosets) are rejected: the
    surviving state would not be a coset of the stabiliser.
    """
    stabilizer = stabilizer_bruteforce(f)
    if not check_nondegenerate(f, stabilizer):
        raise ValueError("function table is degenerate: equal values on distinct stabiliser cosets")
    group_bits, value_bits = _register_widths(f)
    state = build_function_state(f)
    outcome, post = collapse_register(state, range(group_bits, group_bits + value_bits), rng)
    observed = int(outcome, 2)
    offset = observed << group_bits
    register = post.amps[offset : offset + (1 << group_bits)]
    return observed, QState(group_bits, register)


def _group_vector(state: QState | Sequence[complex] | np.ndarray, group: AbelianGroup) -> np.ndarray:
    # Accept a vector of length |G| or a group-register state padded to the next power of two.
    amps = state.amps if isinstance(state, QState) else np.asarray(state, dtype=np.complex128)
    if amps.shape == (group.order,):
        return amps
    if amps.ndim == 1 and amps.shape[0] >= group.order:
        tail = amps[group.order :]
        if np.max(np.abs(tail), initial=0.0) > 1e-9:
            raise ValueError("padded register has weight outside the group range")
        return amps[: group.order]
    raise ValueError(f"state has length {amps.shape}, expected {group.order} (possibly padded)")


def _is_power_of_two_cycle(group: AbelianGroup) -> bool:
    return group.rank == 1 and group.order & (group.order - 1) == 0 and group.order > 1


def fourier_sample(
    coset_state: QState | Sequence[complex] | np.ndarray,
    group: AbelianGroup,
    shots: int,
    rng: np.random.Generator,
) -> list[int]:
    """Transform the group register and read it: a list of label indices."""
    if shots < 1:
        raise ValueError(f"shot count {shots} must be positive")
    vec = _group_vector(coset_state, group)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"group register norm {norm!r} is not 1")
    if _is_power_of_two_cycle(group):
        n = (group.order - 1).bit_length()
        spectrum = apply_qft(QState(n, vec)).amps
    else:
        spectrum = apply_dense(group, vec)
    probs = np.abs(spectrum) ** 2
    probs = np.where(probs < 0, 0.0, probs)
    probs /= probs.sum()
    return [int(l) for l in rng.choice(group.order, size=shots, p=probs)]


def label_distribution(group: AbelianGroup, stabilizer: Subgroup) -> np.ndarray:
    """Exact post-transform Born distribution of a coset state of the given subgroup."""
    if stabilizer.parent != group:
        raise ValueError("subgroup belongs to a different group")
    vec = np.zeros(group.order, dtype=np.complex128)
    vec[list(stabilizer.members)] = 1.0 / np.sqrt(stabilizer.order)
    spectrum = apply_dense(group, vec, cap=max(EXACT_CAP, group.order))
    probs = np.abs(spectrum) ** 2
    return np.where(probs < 0, 0.0, probs)


def reconstruct_subgroup(group: AbelianGroup, labels: Sequence[int]) -> Subgroup:
    """Intersection of the exact constraints chi_label(k) = 1 over the observed labels."""
    distinct = sorted(set(int(l) for l in labels))
    for l in distinct:
        if not 0 <= l < group.order:
            raise ValueError(f"label index {l} out of range for group of order {group.order}")
    if not distinct:
        warnings.warn("no labels observed: reconstruction is the whole group", stacklevel=2)
        return full_subgroup(group)
    mask = np.ones(group.order, dtype=bool)
    for l in distinct:
        mask &= character_phases(group, l) == 0
    return Subgroup(group, tuple(int(i) for i in np.nonzero(mask)[0]))


def find_period(
    f: FunctionTable,
    max_shots: int,
    rng: np.random.Generator,
    *,
    mode: str = "exact",
    window: int = CONFIRMATION_WINDOW,
) -> StabilizerResult:
    """Sample labels one at a time until the reconstruction survives `window` consecutive samples.

    The result is flagged non-converged when the shot budget runs out first.
    """
    if mode not in MODES:
        raise ValueError(f"mode {mode!r} not in {MODES}")
    if max_shots < 1:
        raise ValueError(f"shot budget {max_shots} must be positive")
    group = f.group
    if mode == "exact":
        if group.order > EXACT_CAP:
            raise ValueError(f"group order {group.order} exceeds the exact-mode cap {EXACT_CAP}")
        stabilizer = stabilizer_bruteforce(f)
        if not check_nondegenerate(f, stabilizer):
            raise ValueError("function table is degenerate: equal values on distinct stabiliser cosets")
        probs = label_distribution(group, stabilizer)
        probs = probs / probs.sum()
    elif group.order > SIMULATE_CAP:
        raise ValueError(f"group order {group.order} exceeds the simulation cap {SIMULATE_CAP}")

    labels: list[int] = []
    mask = np.ones(group.order, dtype=bool)
    survivors = group.order
    streak = 0
    samples = 0
    while samples < max_shots and streak < window:
        if mode == "exact":
            label = int(rng.choice(group.order, p=probs))
        else:
            _, register = sample_coset_state(f, rng)
            label = fourier_sample(register, group, 1, rng)[0]
        labels.append(label)
        samples += 1
        mask &= character_phases(group, label) == 0
        remaining = int(mask.sum())
        streak = streak + 1 if remaining == survivors else 0
        survivors = remaining
    subgroup = Subgroup(group, tuple(int(i) for i in np.nonzero(mask)[0]))
    return StabilizerResult(subgroup, samples, tuple(labels), streak >= window)


def two_to_one_table(n: int, mask: int, rng: np.random.Generator) -> FunctionTable:
    """A random nondegenerate two-to-one table on (Z_2)^n with f(x) = f(x XOR mask)."""
    if n < 1:
        raise ValueError(f"bit count {n} must be positive")
    if not 0 < mask < (1 << n):
        raise ValueError(f"mask {mask} must be a nonzero {n}-bit value")
    group = AbelianGroup((2,) * n)
    relabel = rng.permutation(1 << (n - 1))
    values = [0] * (1 << n)
    pair_rank: dict[int, int] = {}
    for x in range(1 << n):
        canonical = min(x, x ^ mask)
        if canonical not in pair_rank:
            pair_rank[canonical] = len(pair_rank)
        values[x] = int(relabel[pair_rank[canonical]])
    return FunctionTable(group, tuple(values))
