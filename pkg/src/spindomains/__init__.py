"""Two collective spin domains relaxing into a common zero-temperature bosonic reservoir."""

from .angular_momentum import (
    AngularMomentumError,
    DecompositionSpec,
    SpinQuantum,
    clebsch_gordan,
    decompose,
    ladder_element,
)
from .dynamics import EvolutionParams, analytic_element, eom_rhs, integrate, relax
from .entanglement import (
    BipartiteDims,
    log_negativity,
    negativity_closed_form_nb1,
    partial_transpose,
    trace_norm,
    von_neumann_entropy,
)
from .oracle import Liouvillian, build_liouvillian, evolve_oracle, steady_state_oracle
from .state_space import (
    BlockLayout,
    DensityMatrix,
    Trajectory,
    from_tensor_product,
    initial_state,
    observable_jz,
    to_tensor_product,
)
from .steady_state import (
    SteadyStateReport,
    negative_temperature_threshold,
    polarization_closed_form,
    steady_state,
)

__version__ = "0.1.0"
