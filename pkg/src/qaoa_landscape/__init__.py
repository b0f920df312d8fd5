"""p=1 QAOA energy landscapes for Max-Cut: Ising conversion, closed-form and
statevector evaluation, roughness metrics and SPSA optimization."""

from qaoa_landscape.analytic import (
    GridSpec,
    Landscape,
    analytic_expectation,
    edge_expectation,
    landscape_grid,
)
from qaoa_landscape.errors import CapacityError, ContractError, Graph6Error
from qaoa_landscape.graphs import (
    FIXTURE_IDS,
    CutResult,
    EdgeStructure,
    Graph,
    brute_force_maxcut,
    edge_structure,
    encode_graph6,
    fixture_graph,
    parse_graph6,
    read_graph6_file,
)
from qaoa_landscape.ising import (
    AugmentedMatrix,
    IsingModel,
    QuboProblem,
    SymmetryReport,
    augmented_matrix,
    cut_spectrum,
    maxcut_qubo,
    qubo_to_ising,
    symmetry_report,
)
from qaoa_landscape.roughness import (
    RoughnessReport,
    fourier_density,
    roughness_report,
    total_variation,
)
from qaoa_landscape.simulator import (
    Statevector,
    exact_expectation,
    qaoa_state,
    sampled_expectation,
)
from qaoa_landscape.spsa import OptimizationResult, SpsaSettings, spsa_optimize

__version__ = "0.1.0"
