"""Exact computations for graded Artinian level algebras over GF(p).

The package builds generic level quotients by the colon-ideal
construction, resolves modules over them, and checks the rational
Poincare series identities that compressed rings satisfy.  Heavy lifting
is dense linear algebra mod p on top of numpy; everything is exact.
"""

from .generator import LevelSpec, sample_level_ideal
from .koszul import (
    Window,
    construct_g,
    full_window,
    koszul_complex,
    nu_rank_Q,
    power_window,
    quotient_window,
    tor_over_Q,
)
from .poly import HomogPoly, parse_poly, parse_ring_text
from .quotient import GradedQuotient, NotArtinianError, build_quotient, truncate
from .resolve import (
    ResolutionSlice,
    induced_tor_rank_R,
    minimal_resolution,
    residue_module,
    window_map,
    window_module,
)
from .series import (
    IntSeries,
    denominator_dR,
    denominator_comparison,
    golod_denominator,
    poincare_Q,
    verify_golod_ring,
    verify_main_theorem,
    verify_module_rationality,
    verify_quotient_socle,
)
from .structure import (
    annihilator,
    colon_into,
    first_step_check,
    is_compressed,
    is_level,
    mult_map,
    socle,
    socle_polynomial,
    v_invariant,
)
from .tate import TateComplex, phi_kernel_dims, tate_map_rank

__all__ = [
    "LevelSpec",
    "sample_level_ideal",
    "Window",
    "construct_g",
    "full_window",
    "koszul_complex",
    "nu_rank_Q",
    "power_window",
    "quotient_window",
    "tor_over_Q",
    "HomogPoly",
    "parse_poly",
    "parse_ring_text",
    "GradedQuotient",
    "NotArtinianError",
    "build_quotient",
    "truncate",
    "ResolutionSlice",
    "induced_tor_rank_R",
    "minimal_resolution",
    "residue_module",
    "window_map",
    "window_module",
    "IntSeries",
    "denominator_dR",
    "denominator_comparison",
    "golod_denominator",
    "poincare_Q",
    "verify_golod_ring",
    "verify_main_theorem",
    "verify_module_rationality",
    "verify_quotient_socle",
    "annihilator",
    "colon_into",
    "first_step_check",
    "is_compressed",
    "is_level",
    "mult_map",
    "socle",
    "socle_polynomial",
    "v_invariant",
    "TateComplex",
    "phi_kernel_dims",
    "tate_map_rank",
]
