"""Exact q-expansion engine for theta series, eta quotients and Hecke operators,
with brute-force oracles and a verification suite."""

from .backend import BACKEND
from .coeff import QuadRat, Residue
from .forms import EtaQuotientSpec, FormName, eta_quotient, named_form, theta_classical, theta_shimura
from .hecke import HeckeContext, eigen_check, hecke_T, hecke_U, hecke_V
from .ntheory import DirichletChar, class_number, kronecker_symbol, r3
from .series import QSeries

__all__ = [
    "BACKEND",
    "DirichletChar",
    "EtaQuotientSpec",
    "FormName",
    "HeckeContext",
    "QSeries",
    "QuadRat",
    "Residue",
    "class_number",
    "eigen_check",
    "eta_quotient",
    "hecke_T",
    "hecke_U",
    "hecke_V",
    "kronecker_symbol",
    "named_form",
    "r3",
    "theta_classical",
    "theta_shimura",
]
