"""Exact arithmetic for Breuil modules over the divided-power ring S.

The layers build on each other: p-adic residues and configurations
(:mod:`breuil.padic`), the ring S/p^N (:mod:`breuil.ring`), strongly divisible
modules and their duals (:mod:`breuil.sdiv`), torsion presentations
(:mod:`breuil.torsion`) and the text format and CLI (:mod:`breuil.textio`,
:mod:`breuil.cli`).
"""
from .errors import (
    BreuilError,
    CertificateFailure,
    ConfigMismatch,
    InternalPrecisionExceeded,
    InvalidExtensionData,
    LiftFailure,
    MissingWitness,
    NonTermination,
    NotAUnit,
    NotDivisible,
    NotInFil1,
    ParseError,
    PrecisionExhausted,
    SemanticError,
)
from .kernels import BACKEND
from .padic import PadicConfig, PadicInt, pa_arith, pa_div_p, pa_inverse, pa_val
from .ring import (
    OKElem,
    SElem,
    fil1_contains,
    s_add,
    s_basis,
    s_breuil_c,
    s_E,
    s_frobenius,
    s_from_poly,
    s_gamma,
    s_inverse,
    s_mul,
    s_one,
    s_phi1,
    s_project_OK,
    s_u,
    s_zero,
)
from .sdiv import (
    SDivModule,
    SDivMorphism,
    sd_double_dual_map,
    sd_dual,
    sd_dual_morphism,
    sd_morphism_validate,
    sd_phi1_apply,
    sd_validate,
)
from .torsion import (
    ExtensionData,
    SInfElem,
    TorsionDualElem,
    TorsionElem,
    TorsionPresentation,
    t_dual,
    t_dual_equal,
    t_dual_eval,
    t_dual_phi1,
    t_equal,
    t_extension_resolve,
    t_fil1_dual_contains,
    t_make,
    t_phi1,
)

__version__ = "0.1.0"
