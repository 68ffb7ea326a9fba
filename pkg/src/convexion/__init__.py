"""convexion: exact-arithmetic computational convex algebra.

Finite distributions over a semiring, finitely presented convex sets with a
certificate-producing equality engine, the join and the convex tensor
product, the convexity PROP and quasiconvexity operad, classical and convex
Grothendieck constructions, entropy-axiom verification, and desk-scale
simplicial distributions.
"""

__version__ = "0.1.0"

from .distribution import FiniteDistribution, convex_combine, delta, flatten, pushforward
from .presentation import (
    ConvexMap,
    EqualityVerdict,
    PresentedElement,
    Presentation,
    eq,
    hom_combine,
    induce_map,
    quotient_mix,
    verify_verdict,
)
from .semiring import BOOLEAN, RATIONAL

__all__ = [
    "__version__",
    "FiniteDistribution",
    "delta",
    "pushforward",
    "flatten",
    "convex_combine",
    "Presentation",
    "PresentedElement",
    "ConvexMap",
    "EqualityVerdict",
    "eq",
    "quotient_mix",
    "induce_map",
    "hom_combine",
    "verify_verdict",
    "RATIONAL",
    "BOOLEAN",
]
