"""Outage, capacity and power-splitting analysis for a wireless-powered
multi-antenna amplify-and-forward relay, with and without co-channel
interference."""
from .errors import (BracketFailure, ConvergenceError, DegenerateParams, DomainError,
                     QuadratureError, SchemeUnsupported)
from .mc import McEstimate, estimate_capacity, estimate_outage, estimate_outage_shared
from .model import ChannelDraw, RngStream, SystemParams, draw_channels
from .optimum import ThetaPolynomial, ThetaSolution, capacity_theta_scan, mc_theta_scan, optimal_theta
from .schemes import Scheme, sinr

__version__ = "0.1.0"

__all__ = [
    "BracketFailure", "ChannelDraw", "ConvergenceError", "DegenerateParams", "DomainError",
    "McEstimate", "QuadratureError", "RngStream", "Scheme", "SchemeUnsupported", "SystemParams",
    "ThetaPolynomial", "ThetaSolution", "draw_channels", "estimate_capacity", "estimate_outage",
    "estimate_outage_shared", "capacity_theta_scan", "mc_theta_scan", "optimal_theta", "sinr",
]
