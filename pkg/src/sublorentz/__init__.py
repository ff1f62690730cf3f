"""Geodesics on the 7-dimensional quaternionic nilpotent group whose horizontal
distribution carries a Lorentzian metric, with the 3-dimensional Heisenberg
group as a comparison case."""
from .errors import DegenerateEndpoint, DomainError, InvalidQuery, SingularAt, ZeroTheta
from .kernels import BACKEND as KERNEL_BACKEND

__all__ = [
    "DegenerateEndpoint", "DomainError", "InvalidQuery", "SingularAt", "ZeroTheta",
    "KERNEL_BACKEND",
]
