"""Witt vectors, δ-rings and arithmetic jet spaces over finitely presented rings."""
from .errors import (CocycleFailed, CongruenceFailed, IsoFailed, MathError, NotDivisible, NotInGhostImage,
                     ParseError, PresentationOnly, VerificationFailed, WittkitError)
from .poly import Poly, parse_poly
from .rings import (FPRing, RingElem, RingHom, Z, base_change, count_points, free_ring, localize, mod_fiber,
                    normal_form, product_ring, presented_ring, tensor_ring)
from .scalars import ZZ, Scalar
from .witt import BigWittCtx, GhostVec, WittCtx, WittVec
from .jets import JetCtx, delta_apply, jet_presentation, phi_apply

__version__ = "0.1.0"

__all__ = ["CocycleFailed", "CongruenceFailed", "IsoFailed", "MathError", "NotDivisible", "NotInGhostImage",
           "ParseError", "PresentationOnly", "VerificationFailed", "WittkitError", "Poly", "parse_poly", "FPRing",
           "RingElem", "RingHom", "Z", "base_change", "count_points", "free_ring", "localize", "mod_fiber",
           "normal_form", "product_ring", "presented_ring", "tensor_ring", "ZZ", "Scalar", "BigWittCtx",
           "GhostVec", "WittCtx", "WittVec", "JetCtx", "delta_apply", "jet_presentation", "phi_apply"]
