"""Analytical outage and capacity expressions and their numerical kernels."""
from .capacity import (CapacityTerms, capacity_gamma1, capacity_gamma2_cci, capacity_gamma2_nl,
                       capacity_terms, capacity_upper_bound, mean_log_gamma1, mean_log_gamma2)
from .distributions import (cdf_gamma_i1, cdf_gamma_i2, ccdf_gamma2_nl, ccdf_gamma_i1,
                            ccdf_gamma_i2, check_interference_params, mean_log_z, pdf_z)
from .outage import (ArrayGains, OutageBound, OutageBoundFactors, OutageCoeffs, array_gain_terms,
                     cci_effect_margin, mrc_single_antenna_high_snr, outage_exact_nl,
                     outage_high_snr, outage_lower_bound, second_hop_series)
from .quadrature import DEFAULT_QUAD, QuadratureSpec

__all__ = [
    "ArrayGains", "CapacityTerms", "DEFAULT_QUAD", "OutageBound", "OutageBoundFactors",
    "OutageCoeffs", "QuadratureSpec", "array_gain_terms", "capacity_gamma1",
    "capacity_gamma2_cci", "capacity_gamma2_nl", "capacity_terms", "capacity_upper_bound",
    "cci_effect_margin", "ccdf_gamma2_nl", "ccdf_gamma_i1", "ccdf_gamma_i2", "cdf_gamma_i1",
    "cdf_gamma_i2", "check_interference_params", "mean_log_gamma1", "mean_log_gamma2",
    "mean_log_z", "mrc_single_antenna_high_snr", "outage_exact_nl", "outage_high_snr",
    "outage_lower_bound", "pdf_z", "second_hop_series",
]
