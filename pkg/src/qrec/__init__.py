"""Recognisers for languages built with semiring counting quantifiers."""

from .monoid import Dfa, FiniteMonoid, MonoidMorphism, Recogniser, syntactic_monoid
from .quantify import DiamondMonoid, DiamondRecogniser, diamond, quantify
from .semiring import Semiring, from_spec, make_bool2, make_zq

__all__ = [
    "Dfa",
    "DiamondMonoid",
    "DiamondRecogniser",
    "FiniteMonoid",
    "MonoidMorphism",
    "Recogniser",
    "Semiring",
    "diamond",
    "from_spec",
    "make_bool2",
    "make_zq",
    "quantify",
    "syntactic_monoid",
]
