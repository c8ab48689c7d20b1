"""p-typical Witt vectors: universal polynomials, vectors, presentations, big Witt nesting."""
from .big import BigWittCtx, big_witt
from .presentations import (LocalizedWitt, PresentationReport, localization_density_check, versch_one,
                            witt_localized, wittring_presentation_Z)
from .universal import UnivPolys, universal
from .vectors import (GhostVec, WittCtx, WittVec, alpha, alpha_section, coplethysm, frob, from_ghost, ghost,
                      ghost_grid, rgh, teich, truncate, versch, w_add, w_mul, w_neg, w_one, w_zero)


def sum_polys(p: int, n: int):
    return list(universal(p, n).S)


def prod_polys(p: int, n: int):
    return list(universal(p, n).P)


def neg_polys(p: int, n: int):
    return list(universal(p, n).N)


def frob_polys(p: int, n: int):
    return list(universal(p, n).F)


__all__ = ["BigWittCtx", "big_witt", "LocalizedWitt", "PresentationReport", "localization_density_check",
           "versch_one", "witt_localized", "wittring_presentation_Z", "UnivPolys", "universal", "GhostVec",
           "WittCtx", "WittVec", "alpha", "alpha_section", "coplethysm", "frob", "from_ghost", "ghost", "ghost_grid",
           "rgh", "teich", "truncate", "versch", "w_add", "w_mul", "w_neg", "w_one", "w_zero", "sum_polys",
           "prod_polys", "neg_polys", "frob_polys"]
