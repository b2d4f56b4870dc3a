"""Relaxation times of floating superconducting qubits from linear circuit models."""

__version__ = "0.1.0"

from .capacitance import (
    LoopGeometry,
    disc_capacitance,
    series_effective_capacitance,
    sphere_capacitance,
    toroid_capacitance,
    toroid_on_substrate,
)
from .circuit import (
    Element,
    Netlist,
    assemble_admittance_matrix,
    branch_current_from_drive,
    driving_point_admittance,
    element_admittance,
    solve_node_voltages,
)
from .models import (
    CouplingEnvironment,
    SweepResult,
    SweepSpec,
    beta_factor,
    build_center_tap,
    build_distributed_model,
    build_grounded_bias,
    build_lumped_model,
    build_symmetric_single_lead,
    effective_resistance_sweep,
    environment,
    environment_admittance,
    wire_inductance,
)
from .netlist_io import parse_netlist, read_netlist, serialize_netlist
from .relaxation import (
    PhaseMatrixElement,
    QubitParams,
    ThermalState,
    effective_parallel_inductance,
    harmonic_matrix_element,
    josephson_inductance,
    loaded_resonance_frequency,
    t1_classical,
    t1_closed_form_lumped,
    t1_distributed_estimate,
    t1_quantum,
)
