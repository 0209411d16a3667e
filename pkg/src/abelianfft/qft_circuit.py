"""Gate network for the Fourier transform on Z_{2^m}.

The network is built one recursion level at a time.  Level k acts on the top k
wires (m-k .. m-1): conditional phases between the level's low wire and each
higher wire, one Hadamard on the low wire, then a cyclic relabelling that
sends the low wire's content to the top.  With reorder "swaps" every
relabelling is m-1 explicit adjacent swaps; with "relabel" (the default) the
swaps are deferred into a recorded final wire permutation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simulator import Gate, Program, QState, apply_1q, apply_2q, cphase, hadamard, swap_gate

REORDER_MODES = ("swaps", "relabel")


@dataclass(frozen=True)
class GateCountReport:
    hadamards: int
    cphases: int
    swaps: int
    total: int


@dataclass(frozen=True)
class GateList:
    """Compiled network: gates to run in order, plus the final wire permutation.

    final_permutation[x] is the wire that carries logical output bit x once
    the gates have run; in "swaps" mode it is the identity.
    """

    n_qubits: int
    gates: tuple[Gate, ...]
    reorder_mode: str
    final_permutation: tuple[int, ...]

    def to_program(self) -> Program:
        return Program(self.n_qubits, self.gates)

    def counts(self) -> GateCountReport:
        hs = sum(1 for g in self.gates if g.name == "H")
        cps = sum(1 for g in self.gates if g.name == "CPHASE")
        sws = sum(1 for g in self.gates if g.name == "SWAP")
        return GateCountReport(hs, cps, sws, len(self.gates))


def _level_ops(m: int) -> list[tuple]:
    # The network on fixed wires, innermost level first.  Each op is
    # ("cphase", low, high, exponent) or ("h", wire) or ("swap", a, b).
    ops: list[tuple] = []
    for k in range(1, m + 1):
        base = m - k
        for p in range(1, k):
            # diag(1,1,1, w^(2^(p-1))) with w = exp(2 pi i / 2^k) is a phase of 2 pi / 2^(k-p+1).
            ops.append(("cphase", base, base + p, k - p + 1))
        ops.append(("h", base))
        for a in range(base, m - 1):
            ops.append(("swap", a, a + 1))
    return ops


def compile_qft(m: int, reorder_mode: str = "relabel") -> GateList:
    """Compile the transform network on m wires."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"wire count {m!r} must be a positive integer")
    if reorder_mode not in REORDER_MODES:
        raise ValueError(f"reorder mode {reorder_mode!r} not in {REORDER_MODES}")
    gates: list[Gate] = []
    if reorder_mode == "swaps":
        for op in _level_ops(m):
            if op[0] == "cphase":
                gates.append(cphase(op[1], op[2], exponent=op[3]))
            elif op[0] == "h":
                gates.append(hadamard(op[1]))
            else:
                gates.append(swap_gate(op[1], op[2]))
        return GateList(m, tuple(gates), reorder_mode, tuple(range(m)))
    # Deferred reordering: wire_of[x] is where the content of fixed-network wire x
    # currently lives.  Gates are emitted on the mapped wires; swaps only update the map.
    wire_of = list(range(m))
    for op in _level_ops(m):
        if op[0] == "cphase":
            gates.append(cphase(wire_of[op[1]], wire_of[op[2]], exponent=op[3]))
        elif op[0] == "h":
            gates.append(hadamard(wire_of[op[1]]))
        else:
            a, b = op[1], op[2]
            wire_of[a], wire_of[b] = wire_of[b], wire_of[a]
    return GateList(m, tuple(gates), reorder_mode, tuple(wire_of))


def gate_count(m: int, reorder_mode: str = "relabel") -> GateCountReport:
    """Closed-form gate counts: m Hadamards, m(m-1)/2 conditional phases, swaps per mode."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"wire count {m!r} must be a positive integer")
    if reorder_mode not in REORDER_MODES:
        raise ValueError(f"reorder mode {reorder_mode!r} not in {REORDER_MODES}")
    hs = m
    cps = m * (m - 1) // 2
    sws = m * (m - 1) // 2 if reorder_mode == "swaps" else 0
    return GateCountReport(hs, cps, sws, hs + cps + sws)


def apply_wire_permutation(state: QState, permutation: tuple[int, ...]) -> QState:
    """Reorder wires so that output bit x is read from wire permutation[x]."""
    n = state.n_qubits
    if sorted(permutation) != list(range(n)):
        raise ValueError(f"{permutation!r} is not a permutation of 0..{n - 1}")
    idx = np.arange(1 << n, dtype=np.int64)
    source = np.zeros(1 << n, dtype=np.int64)
    for x, w in enumerate(permutation):
        source |= ((idx >> x) & 1) << w
    return QState(n, state.amps[source])


def apply_qft(state: QState) -> QState:
    """Run the compiled network on the state and undo the deferred wire relabelling."""
    compiled = compile_qft(state.n_qubits, "relabel")
    for gate in compiled.gates:
        state = apply_1q(state, gate) if gate.arity == 1 else apply_2q(state, gate)
    return apply_wire_permutation(state, compiled.final_permutation)
