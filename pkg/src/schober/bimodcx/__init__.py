"""Singular Soergel bimodules, their maps and complexes, computed exactly in bounded degree."""
from .bc import bc_total, expl
from .complexes import (Obj, WebComplex, decompose, gaussian_eliminate, is_contractible,
                        same_complex, tidy_complex)
from .core import Bim, BimodMap, Chain, bim, proportional, web_shift
from .foams import coev, counit, foam_degrees, snake_checks, trace_counit, unit
from .homs import hom_basis, hom_dim
from .koszul import koszul, koszul_contractible, lemma_check, pkls_decompose, zeta_basis
from .rickard import chi_plus, rickard
from .suites import SUITES, run_suite

__all__ = [
    "Bim", "BimodMap", "Chain", "Obj", "WebComplex", "SUITES",
    "bc_total", "bim", "chi_plus", "coev", "counit", "decompose", "expl", "foam_degrees",
    "gaussian_eliminate", "hom_basis", "hom_dim", "is_contractible", "koszul", "koszul_contractible",
    "lemma_check", "pkls_decompose", "proportional", "rickard", "run_suite", "same_complex",
    "snake_checks", "tidy_complex", "trace_counit", "unit", "web_shift", "zeta_basis",
]
