"""Smooth values of polynomials: local densities, exact counts, experiments.

The heavy lifting lives in the C++ extension ``psmooth._psmooth``; this
package re-exports its public surface.  Polynomials are built from text in
either the plain form ``"t^2+1"`` or the factored grammar ``"[t; t+2]"``.
"""

from ._psmooth import (
    DomainError,
    FactoredPoly,
    LocalRoots,
    Poly,
    ResourceError,
    c_of_g,
    c_q_of_g,
    configure,
    coprime_multisum,
    delta_q,
    error_term,
    g_of,
    is_squarefree,
    kappa_estimate,
    li,
    li_poly,
    m_count,
    mertens_rho,
    mg_sum,
    mg_sum_coprime,
    poly_gcd,
    poly_smooth_count,
    prime_count,
    prime_count_ap,
    prime_values_count,
    resultant,
    rho,
    roots_mod,
    shifted_prime_smooth_count,
    sigma,
    sigma_star,
    singular_series,
    smooth_count,
    smooth_count_ap,
    verify_ap,
    verify_cflb,
    verify_identity,
    verify_theorem1,
    verify_theorem2,
    verify_uh,
    weighted_coprime_sum,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FactoredPoly",
    "LocalRoots",
    "Poly",
    "ResourceError",
    "c_of_g",
    "c_q_of_g",
    "configure",
    "coprime_multisum",
    "delta_q",
    "error_term",
    "g_of",
    "is_squarefree",
    "kappa_estimate",
    "li",
    "li_poly",
    "m_count",
    "mertens_rho",
    "mg_sum",
    "mg_sum_coprime",
    "poly_gcd",
    "poly_smooth_count",
    "prime_count",
    "prime_count_ap",
    "prime_values_count",
    "resultant",
    "rho",
    "roots_mod",
    "shifted_prime_smooth_count",
    "sigma",
    "sigma_star",
    "singular_series",
    "smooth_count",
    "smooth_count_ap",
    "verify_ap",
    "verify_cflb",
    "verify_identity",
    "verify_theorem1",
    "verify_theorem2",
    "verify_uh",
    "weighted_coprime_sum",
]
