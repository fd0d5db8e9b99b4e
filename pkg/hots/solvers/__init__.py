from .power import hopm, alternate_pm, shifted_pm, optimal_shift, shift_curve
from .vrrw import ScheduleC, vrrw_iterate, simulate_spacey_mc
from .pagerank import mlpr_fixed_point
from .perturbation import perturbation_bound
from .pair_chain import pair_chain_stationary
from .certificate import convergence_certificate

__all__ = [
    "hopm",
    "alternate_pm",
    "shifted_pm",
    "optimal_shift",
    "shift_curve",
    "ScheduleC",
    "vrrw_iterate",
    "simulate_spacey_mc",
    "mlpr_fixed_point",
    "perturbation_bound",
    "pair_chain_stationary",
    "convergence_certificate",
]
