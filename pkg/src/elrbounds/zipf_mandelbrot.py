"""Zipf and Zipf-Mandelbrot laws and their divergence bound corollaries.

The law on ranks {1, ..., N} with shift q >= 0 and exponent s > 0 has
probability mass (i + q)^(-s) / H where H is the finite normalizing sum;
q = 0 recovers Zipf's law.  The bound corollaries are pure specializations
of the generic divergence bounds to two materialized laws, with [m, M]
taken from the elementwise ratio extrema.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .divergences import GeneratorFunction, divergence_bounds
from .elr_bounds import BoundReport

__all__ = [
    "ZipfMandelbrot",
    "harmonic_sum",
    "zm_distribution",
    "zm_ratio_extrema",
    "zm_divergence_bounds",
]


def _terms(N: int, q: float, s: float) -> np.ndarray:
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError("N must be a positive integer")
    if q < 0:
        raise ValueError("shift q must be nonnegative")
    if s <= 0:
        raise ValueError("exponent s must be positive")
    ranks = np.arange(1, N + 1, dtype=float)
    return (ranks + q) ** (-s)


def _accumulate_descending(terms: np.ndarray) -> float:
    # fixed left-to-right accumulation, largest term first, for
    # platform-reproducible normalizers
    total = 0.0
    for v in terms:
        total += float(v)
    return total


def harmonic_sum(N: int, q: float, s: float) -> float:
    """The normalizer: sum over i = 1..N of (i + q)^(-s).

    Terms decrease in i, so natural order is descending magnitude; the
    accumulation order is fixed for reproducibility.
    """
    return _accumulate_descending(_terms(N, q, s))


@dataclass(frozen=True)
class ZipfMandelbrot:
    """A materialized Zipf-Mandelbrot law."""

    N: int
    q: float
    s: float
    normalizer: float
    pmf: np.ndarray

    def params(self) -> dict:
        return {"N": self.N, "q": self.q, "s": self.s,
                "normalizer": self.normalizer}


def zm_distribution(N: int, q: float, s: float) -> ZipfMandelbrot:
    """Materialize the law with parameters (N, q, s)."""
    terms = _terms(N, q, s)
    normalizer = _accumulate_descending(terms)
    pmf = terms / normalizer
    pmf.flags.writeable = False
    return ZipfMandelbrot(N=int(N), q=float(q), s=float(s),
                          normalizer=normalizer, pmf=pmf)


def zm_ratio_extrema(a: ZipfMandelbrot, b: ZipfMandelbrot) -> tuple[float, float]:
    """(min, max) of the elementwise mass ratios a_i / b_i.

    Normalization forces the ratios to straddle 1, so min <= 1 <= max.
    The extrema are computed from the same materialized ratio values the
    divergence bounds see, keeping the two routes consistent to the bit.
    """
    if a.N != b.N:
        raise ValueError("length mismatch: the two laws must share N")
    ratio = a.pmf / b.pmf
    return float(ratio.min()), float(ratio.max())


def zm_divergence_bounds(a: ZipfMandelbrot, b: ZipfMandelbrot,
                         gen: GeneratorFunction,
                         theorem: str = "derivative") -> BoundReport:
    """Divergence bound pair between two Zipf-Mandelbrot laws.

    Delegates to the generic divergence bounds on the materialized mass
    vectors with [m, M] from the ratio extrema; identical laws give a
    degenerate interval and are rejected.
    """
    m, M = zm_ratio_extrema(a, b)
    if m == M:
        raise ValueError("degenerate interval: the two laws have identical "
                         "mass ratios")
    report = divergence_bounds(a.pmf, b.pmf, gen, m=m, M=M, theorem=theorem)
    return replace(report, details={**report.details,
                                    "zm_a": a.params(), "zm_b": b.params()})
