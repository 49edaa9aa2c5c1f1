"""Pre-existing one-sided certificates for a violation probability.

Three bounds that certify the risk of a fixed decision from Bernoulli
counts alone: the additive Chernoff bound, the exact Clopper-Pearson
upper confidence limit, and the prior sample-size bound of the scenario
approach.  The last two are roots of binomial tail equations and share
one bisection routine.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .binom_tail import log_binom_cdf

__all__ = [
    "DEFAULT_TOL",
    "MAX_BISECT_ITER",
    "ChernoffBound",
    "chernoff_bound",
    "clopper_pearson",
    "apriori_epsilon",
]

DEFAULT_TOL = 1e-10
MAX_BISECT_ITER = 200


def check_confidence(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise ValueError(f"confidence level beta must lie in (0, 1), got {beta}")


class ChernoffBound(NamedTuple):
    """Additive bound value plus a flag for the out-of-range pathology."""

    value: float
    exceeds_one: bool


def chernoff_bound(m: int, r: int, beta: float) -> ChernoffBound:
    """One-sided Chernoff bound r/m + sqrt(ln(beta) / (-2 m)).

    The value is returned unclamped: for large r it can exceed one, and
    truncating would distort gap statistics downstream, so callers get
    the raw value with ``exceeds_one`` set instead.
    """
    if m < 1:
        raise ValueError(f"require m >= 1 validation samples, got m={m}")
    if not 0 <= r <= m:
        raise ValueError(f"require 0 <= r <= m, got r={r}, m={m}")
    check_confidence(beta)
    value = r / m + math.sqrt(math.log(beta) / (-2.0 * m))
    return ChernoffBound(value, value > 1.0)


def _binom_tail_root(n: int, m: int, beta: float, tol: float) -> float:
    """Unique x in (0, 1) with B_n(x; m) = beta, for 0 <= m < n.

    The tail is strictly decreasing from 1 at x = 0 to 0 at x = 1, so a
    deterministic-midpoint bisection converges unconditionally; the
    comparison runs in log space because beta is typically ~1e-6.
    """
    if tol <= 0.0:
        raise ValueError(f"require tol > 0, got {tol}")
    log_beta = math.log(beta)
    lo, hi = 0.0, 1.0
    for _ in range(MAX_BISECT_ITER):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        if log_binom_cdf(n, m, mid) > log_beta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def clopper_pearson(m: int, l: int, beta: float, tol: float = DEFAULT_TOL) -> float:
    """Exact one-sided upper confidence bound for a binomial proportion.

    For l < m this is the root of B_m(x; l) = beta; at l == m the bound
    is vacuous and equals one exactly.
    """
    if m < 1:
        raise ValueError(f"require m >= 1 validation samples, got m={m}")
    if not 0 <= l <= m:
        raise ValueError(f"require 0 <= l <= m, got l={l}, m={m}")
    check_confidence(beta)
    if l == m:
        return 1.0
    return _binom_tail_root(m, l, beta, tol)


def apriori_epsilon(n: int, zeta: int, beta: float, tol: float = DEFAULT_TOL) -> float:
    """Prior violation level from the sample size alone.

    Returns the root of B_n(x; zeta - 1) = beta in (0, 1).  Requires
    zeta < n; at zeta >= n the bound is vacuous.
    """
    if n < 1:
        raise ValueError(f"require n >= 1, got n={n}")
    if not 1 <= zeta < n:
        raise ValueError(f"require 1 <= zeta < n, got zeta={zeta}, n={n}")
    check_confidence(beta)
    return _binom_tail_root(n, zeta - 1, beta, tol)
