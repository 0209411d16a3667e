"""Fourier transforms on finite abelian groups, with a qubit simulator, a transform
circuit compiler for Z_(2^m), and a period-finding pipeline built on top."""

__version__ = "0.1.0"

from .dense import (
    DENSE_CAP,
    FourierMatrix,
    apply_dense,
    dense_fourier_matrix,
    fourier_basis_state,
    shift_vector,
)
from .fastfft import (
    OpCountReport,
    SubgroupTower,
    boolean_group,
    build_tower,
    fft_radix2,
    fft_tower,
    predict_cost,
    radix2_group,
    walsh_hadamard,
)
from .groups import (
    AbelianGroup,
    CosetDecomposition,
    Subgroup,
    annihilator,
    character_eval,
    character_phase,
    character_phases,
    coset_decompose,
    element_add,
    element_neg,
    enumerate_subgroups,
    full_subgroup,
    make_group,
    parse_group_spec,
    subgroup_from_generators,
    trivial_subgroup,
)
from .period import (
    FunctionTable,
    StabilizerResult,
    build_function_state,
    check_nondegenerate,
    find_period,
    fourier_sample,
    label_distribution,
    reconstruct_subgroup,
    sample_coset_state,
    stabilizer_bruteforce,
    two_to_one_table,
)
from .qft_circuit import (
    GateCountReport,
    GateList,
    apply_qft,
    apply_wire_permutation,
    compile_qft,
    gate_count,
)
from .simulator import (
    STATE_CAP,
    Gate,
    Program,
    QState,
    apply_1q,
    apply_2q,
    basis_state,
    cnot,
    collapse_register,
    cphase,
    hadamard,
    measure_qubit_distribution,
    new_state,
    pauli_x,
    program_from_json,
    program_to_json,
    run_program,
    sample,
    swap_gate,
)

__all__ = [
    "AbelianGroup",
    "CosetDecomposition",
    "DENSE_CAP",
    "FourierMatrix",
    "FunctionTable",
    "Gate",
    "GateCountReport",
    "GateList",
    "OpCountReport",
    "Program",
    "QState",
    "STATE_CAP",
    "StabilizerResult",
    "Subgroup",
    "SubgroupTower",
    "annihilator",
    "apply_1q",
    "apply_2q",
    "apply_dense",
    "apply_qft",
    "apply_wire_permutation",
    "basis_state",
    "boolean_group",
    "build_function_state",
    "build_tower",
    "character_eval",
    "character_phase",
    "character_phases",
    "check_nondegenerate",
    "cnot",
    "collapse_register",
    "compile_qft",
    "coset_decompose",
    "cphase",
    "dense_fourier_matrix",
    "element_add",
    "element_neg",
    "enumerate_subgroups",
    "fft_radix2",
    "fft_tower",
    "find_period",
    "fourier_basis_state",
    "full_subgroup",
    "fourier_sample",
    "gate_count",
    "hadamard",
    "label_distribution",
    "make_group",
    "measure_qubit_distribution",
    "new_state",
    "parse_group_spec",
    "pauli_x",
    "predict_cost",
    "program_from_json",
    "program_to_json",
    "radix2_group",
    "reconstruct_subgroup",
    "run_program",
    "sample",
    "sample_coset_state",
    "shift_vector",
    "stabilizer_bruteforce",
    "subgroup_from_generators",
    "swap_gate",
    "trivial_subgroup",
    "two_to_one_table",
    "walsh_hadamard",
]
