"""Exact VC-dimension constructions for k-fold unions of half-spaces and
simplex range spaces.

Coordinates may be given as ints, Fractions or "num/den" strings. Reports and
witnesses come back as plain dicts with rationals as Fractions.
"""

import json
from fractions import Fraction

from . import _shatter
from ._shatter import (
    BoxGadget,
    ConstructionFailure,
    GuardError,
    SchemaError,
    SetSystem,
    Theorem1Instance,
    Theorem2Instance,
    build_theorem1,
    build_theorem2,
    bundled_gadget,
    complement_system,
    growth_function,
    k_fold_intersection,
    k_fold_union,
    project,
    search_gadget,
    shatters,
    vc_dim,
)

__all__ = [
    "BoxGadget", "ConstructionFailure", "GuardError", "SchemaError", "SetSystem",
    "Theorem1Instance", "Theorem2Instance", "build_theorem1", "build_theorem2",
    "bundled_gadget", "bundled_instance", "complement_system", "duality_signs",
    "growth_function", "k_fold_intersection", "k_fold_union", "project",
    "realizable_halfspace_subsets", "search_gadget", "shatters", "simplex_witness",
    "union_witness", "vc_dim", "verify_gadget", "verify_theorem1", "verify_theorem2",
]


def _text(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    raise TypeError(f"expected int, Fraction or str, got {type(value).__name__}")


def _fractions(doc):
    # Every string in our documents that looks like "a/b" is a rational.
    if isinstance(doc, dict):
        return {k: _fractions(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_fractions(v) for v in doc]
    if isinstance(doc, str) and "/" in doc:
        return Fraction(doc)
    return doc


def bundled_instance():
    """The d=4, k=2 instance built from the shipped gadget."""
    return build_theorem1(4, 2, bundled_gadget())


def realizable_halfspace_subsets(points):
    return _shatter.realizable_halfspace_subsets([[_text(c) for c in p] for p in points])


def duality_signs(p, b, tau):
    """(sign(sum p_i/b_i - tau), side_of(H(p), D(H))); the two always agree."""
    return _shatter.duality_signs([_text(c) for c in p], [_text(c) for c in b], _text(tau))


def verify_gadget(gadget):
    return json.loads(_shatter.verify_gadget(gadget))


def union_witness(instance, subset):
    return _fractions(json.loads(_shatter.union_witness(instance, list(subset))))


def simplex_witness(instance, subset):
    return _fractions(json.loads(_shatter.simplex_witness(instance, list(subset))))


def verify_theorem1(instance, mode="exhaustive", count=100, seed=None, vcdim=False):
    return json.loads(_shatter.verify_theorem1(instance, mode, count, seed, vcdim))


def verify_theorem2(instance, mode="exhaustive", count=100, seed=None, vcdim=False):
    return json.loads(_shatter.verify_theorem2(instance, mode, count, seed, vcdim))
