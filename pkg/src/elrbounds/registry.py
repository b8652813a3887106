"""Built-in function bundles addressable by name from the CLI.

Arbitrary user functions cannot carry derivative data through a command
line, so the CLI accepts either a registry name (with optional numeric
parameters) or a polynomial given by its coefficient list, whose
derivatives are computed analytically.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import Polynomial

from .divided_diff import FunctionBundle
from .divergences import GENERATOR_NAMES, GeneratorFunction, generator
from .stolarsky_means import upsilon1, upsilon2

__all__ = ["resolve_phi", "resolve_generator", "poly_bundle", "BUILTIN_NAMES"]

_REAL_LINE = dict(domain_lo=-math.inf, domain_hi=math.inf)


def _cubic() -> FunctionBundle:
    return FunctionBundle(
        f=lambda x: np.asarray(x, dtype=float) ** 3,
        d1=lambda x: 3.0 * np.asarray(x, dtype=float) ** 2,
        d2=lambda x: 6.0 * np.asarray(x, dtype=float),
        d3=lambda x: 6.0 * np.ones_like(np.asarray(x, dtype=float)),
        name="cubic", **_REAL_LINE)


def _quartic() -> FunctionBundle:
    return FunctionBundle(
        f=lambda x: np.asarray(x, dtype=float) ** 4,
        d1=lambda x: 4.0 * np.asarray(x, dtype=float) ** 3,
        d2=lambda x: 12.0 * np.asarray(x, dtype=float) ** 2,
        d3=lambda x: 24.0 * np.asarray(x, dtype=float),
        name="quartic", **_REAL_LINE)


def _exp() -> FunctionBundle:
    return FunctionBundle(f=np.exp, d1=np.exp, d2=np.exp, d3=np.exp,
                          name="exp", **_REAL_LINE)


def _xlogx() -> FunctionBundle:
    return FunctionBundle(
        domain_lo=0.0, domain_hi=math.inf,
        f=lambda x: x * np.log(x),
        d1=lambda x: np.log(x) + 1.0,
        d2=lambda x: 1.0 / np.asarray(x, dtype=float),
        d3=lambda x: -1.0 / np.asarray(x, dtype=float) ** 2,
        name="xlogx")


def poly_bundle(coefficients) -> FunctionBundle:
    """Bundle for a polynomial given by ascending coefficients."""
    coefficients = [float(c) for c in coefficients]
    if not coefficients:
        raise ValueError("polynomial needs at least one coefficient")
    p = Polynomial(coefficients)
    d1, d2, d3 = p.deriv(1), p.deriv(2), p.deriv(3)
    return FunctionBundle(f=p, d1=d1, d2=d2, d3=d3,
                          name=f"poly{tuple(coefficients)}", **_REAL_LINE)


BUILTIN_NAMES = ("cubic", "quartic", "exp", "xlogx", "upsilon1", "upsilon2")


def resolve_phi(spec: dict) -> FunctionBundle:
    """Resolve a phi specification {"name": ..., "params": [...]} or
    {"poly": [...]} to a function bundle."""
    if not isinstance(spec, dict):
        raise ValueError("phi specification must be an object")
    if "poly" in spec:
        return poly_bundle(spec["poly"])
    name = spec.get("name")
    params = [float(v) for v in spec.get("params", [])]
    if name == "cubic":
        return _cubic()
    if name == "quartic":
        return _quartic()
    if name == "exp":
        return _exp()
    if name == "xlogx":
        return _xlogx()
    if name == "upsilon1":
        if len(params) != 1:
            raise ValueError("upsilon1 needs one parameter")
        return upsilon1(params[0]).bundle
    if name == "upsilon2":
        if len(params) != 1:
            raise ValueError("upsilon2 needs one parameter")
        return upsilon2(params[0]).bundle
    if name in GENERATOR_NAMES:
        return resolve_generator(spec).bundle
    raise ValueError(f"unknown phi name {name!r}")


def resolve_generator(spec: dict) -> GeneratorFunction:
    """Resolve a generator specification for divergence commands."""
    if not isinstance(spec, dict):
        raise ValueError("phi specification must be an object")
    name = spec.get("name")
    params = [float(v) for v in spec.get("params", [])]
    if name == "renyi":
        if len(params) != 1:
            raise ValueError("renyi needs one parameter (alpha)")
        return generator("renyi", alpha=params[0])
    if name in GENERATOR_NAMES:
        return generator(name)
    raise ValueError(f"unknown generator {name!r}")
