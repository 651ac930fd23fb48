"""Delayed-commutation quantum packet switch: simulator and latency model."""

from .codec import (
    CodeParams,
    CodeWord,
    EncodedPair,
    code_table,
    decode,
    encode_analytic,
    encode_local,
    make_ancilla,
)
from .netsim import (
    DelayModel,
    Route,
    bitrate,
    classical_delay,
    improvement,
    improvement_with_parity,
    simulate_route,
)
from .statevector import (
    DensityMatrix,
    StateVector,
    apply_cnot,
    apply_hadamard,
    apply_toffoli,
    basis_state,
    controlled_swap,
    inner_product,
    measure_qubit,
    partial_trace,
)
from .switch import (
    ContentionError,
    PortStream,
    SwitchInstance,
    no_signaling_probe,
    run_switch_2x2,
    run_switch_general,
)

__version__ = "0.1.0"
