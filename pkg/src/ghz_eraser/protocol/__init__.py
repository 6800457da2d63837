from .coincidence import (
    OUTCOMES,
    ExperimentConfig,
    Outcome,
    analyzer_bra,
    bell_average_closed_form,
    coincidence_probability,
    joint_outcome_probabilities,
    mixture_closed_form,
    phi_plus_closed_form,
    unconditioned_ab_density,
)
from .herald import (
    HERALD_INDEX,
    PORTS,
    DirectHerald,
    HeraldPort,
    HeraldStrategy,
    LinearPolarizerHerald,
    QuarterWaveHerald,
    herald_outcome,
    port_bra,
)
from .source import sandwich_state
from .states import (
    Parity,
    bell_state,
    diagonal,
    ghz_state,
    left_circular,
    right_circular,
    separable_mixture_states,
    xi_states,
)

__all__ = [
    "HERALD_INDEX",
    "OUTCOMES",
    "PORTS",
    "DirectHerald",
    "ExperimentConfig",
    "HeraldPort",
    "HeraldStrategy",
    "LinearPolarizerHerald",
    "Outcome",
    "Parity",
    "QuarterWaveHerald",
    "analyzer_bra",
    "bell_average_closed_form",
    "bell_state",
    "coincidence_probability",
    "diagonal",
    "ghz_state",
    "herald_outcome",
    "joint_outcome_probabilities",
    "left_circular",
    "mixture_closed_form",
    "phi_plus_closed_form",
    "port_bra",
    "right_circular",
    "sandwich_state",
    "separable_mixture_states",
    "unconditioned_ab_density",
    "xi_states",
]
