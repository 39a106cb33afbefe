"""Jack polynomials in the elementary symmetric basis, exactly.

C_kappa denotes the Jack polynomial normalized so that the C_kappa of a
fixed weight k sum to (x_1 + ... + x_m)^k.  Each C_kappa is computed as an
exact rational combination of E_mu over the partitions mu <= kappa (lex,
equal weight): the leading coefficient comes from a hook product, and the
remaining ones follow from C_kappa being an eigenvector of the operator in
`esym`, which is triangular on the E basis.

All expansions are cached per (kappa, beta, m); the cache can be saved to
and restored from a JSON snapshot so repeated runs skip the recurrence.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Tuple

from .esym import EPolynomial, e_monomial_product, laplace_beltrami_row
from .partitions import (
    Partition,
    normalize,
    pad,
    partitions_of,
    upper_hook_product,
    weight,
)


class DegenerateBetaError(ValueError):
    """Two partitions of one weight collided on the operator diagonal."""


@dataclass(frozen=True)
class JackExpansion:
    """A linear combination of Jack polynomials C_delta at fixed beta and m."""
    terms: Tuple[Tuple[Partition, Fraction], ...]
    beta: Fraction
    m: int

    def as_dict(self) -> Dict[Partition, Fraction]:
        return dict(self.terms)


_EXPANSION_CACHE: Dict[Tuple[Partition, Fraction, int], EPolynomial] = {}

CACHE_FORMAT_VERSION = 1


def _as_beta(beta) -> Fraction:
    beta = Fraction(beta)
    if beta <= 0:
        raise ValueError("beta must be positive")
    return beta


def leading_elementary_coeff(kappa: Partition, beta) -> Fraction:
    """Coefficient of E_kappa in C_kappa: (2/beta)^k * k! / hook product at 2/beta."""
    kappa = normalize(kappa)
    beta = _as_beta(beta)
    k = weight(kappa)
    alpha = Fraction(2) / beta
    return alpha ** k * factorial(k) / upper_hook_product(kappa, alpha)


def jack_expansion(kappa: Partition, beta, m: int) -> EPolynomial:
    """C_kappa as an exact E-basis polynomial in m variables."""
    kappa = normalize(kappa)
    beta = _as_beta(beta)
    if len(kappa) > m:
        raise ValueError(f"C_{kappa} vanishes in {m} variables")
    key = (kappa, beta, m)
    cached = _EXPANSION_CACHE.get(key)
    if cached is not None:
        return cached

    k = weight(kappa)
    if k == 0:
        result = EPolynomial.term((), m)
        _EXPANSION_CACHE[key] = result
        return result

    # partitions of weight k in descending lex order, from kappa downwards
    chain = [mu for mu in partitions_of(k, m) if mu <= kappa]
    rows = {nu: laplace_beltrami_row(nu, beta, m).as_dict() for nu in chain}
    d_kappa = rows[kappa].get(kappa, Fraction(0))

    coeffs: Dict[Partition, Fraction] = {kappa: leading_elementary_coeff(kappa, beta)}
    for idx in range(1, len(chain)):
        mu = chain[idx]
        total = Fraction(0)
        for nu in chain[:idx]:
            b = rows[nu].get(mu)
            if b:
                total += b * coeffs[nu]
        denom = d_kappa - rows[mu].get(mu, Fraction(0))
        if denom == 0:
            # The operator is triangular for the dominance order, and its
            # diagonal is strictly monotone along dominance chains for any
            # beta > 0, so a collision can only involve a dominance-
            # incomparable pair; there the coefficient is exactly zero and
            # the numerator must agree.
            if total:
                raise DegenerateBetaError(
                    f"operator diagonal collides for {kappa} and {mu} at beta={beta}")
            coeffs[mu] = Fraction(0)
            continue
        coeffs[mu] = total / denom

    result = EPolynomial(coeffs, m)
    _EXPANSION_CACHE[key] = result
    return result


def e_to_jack(f: EPolynomial, beta) -> JackExpansion:
    """Rewrite a homogeneous E-basis polynomial as a Jack combination.

    Peels off the lex-leading E term against the matching C expansion.
    """
    beta = _as_beta(beta)
    if not f.is_homogeneous():
        raise ValueError("input must be homogeneous")
    work = dict(f.terms)
    out: Dict[Partition, Fraction] = {}
    while work:
        lead = max(work)
        c = work[lead]
        expansion = jack_expansion(lead, beta, f.m)
        scale = c / expansion.terms[lead]
        out[lead] = scale
        for mu, q in expansion.terms.items():
            val = work.get(mu, Fraction(0)) - scale * q
            if val:
                work[mu] = val
            elif mu in work:
                del work[mu]
    terms = tuple(sorted(((k, v) for k, v in out.items() if v), reverse=True))
    return JackExpansion(terms, beta, f.m)


def jack_product(kappa: Partition, tau: Partition, beta, m: int) -> JackExpansion:
    """Expansion of C_kappa * C_tau as a combination of C_delta, exactly."""
    product = jack_expansion(kappa, beta, m) * jack_expansion(tau, beta, m)
    return e_to_jack(product, beta)


def jack_product_with_trace_power(k: int, tau: Partition, beta, m: int) -> Dict[Partition, Fraction]:
    """Expansion of (x_1 + ... + x_m)^k * C_tau as a Jack combination.

    Since the weight-k Jack polynomials sum to the k-th power of e_1, the
    coefficient of C_delta here equals the sum over all kappa of weight k of
    the coefficient of C_delta in C_kappa * C_tau.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    beta = _as_beta(beta)
    base = jack_expansion(tau, beta, m)
    shifted: Dict[Partition, Fraction] = {}
    for mu, c in base.terms.items():
        padded = pad(mu, m)
        shifted[normalize((padded[0] + k,) + padded[1:])] = c
    return e_to_jack(EPolynomial(shifted, m), beta).as_dict()


def jack_evaluate(kappa: Partition, beta, xs) -> float:
    """Numeric value of C_kappa at a point."""
    m = len(list(xs))
    return jack_expansion(kappa, beta, m).evaluate(xs)


def jack_at_identity(kappa: Partition, beta, m: int) -> Fraction:
    """Exact value of C_kappa at (1, 1, ..., 1), via binomial values of e_i."""
    from math import comb

    expansion = jack_expansion(kappa, beta, m)
    total = Fraction(0)
    for key, c in expansion.terms.items():
        padded = pad(key, m)
        v = Fraction(1)
        for i in range(m):
            expo = padded[i] - (padded[i + 1] if i + 1 < m else 0)
            if expo:
                v *= Fraction(comb(m, i + 1)) ** expo
        total += c * v
    return total


# ---------------------------------------------------------------------------
# persistent cache snapshots
# ---------------------------------------------------------------------------

def save_expansion_cache(path: str) -> int:
    """Write the in-memory expansion cache to a JSON snapshot; returns the entry count."""
    entries = []
    for (kappa, beta, m), poly in _EXPANSION_CACHE.items():
        entries.append({
            "kappa": list(kappa),
            "beta": str(beta),
            "m": m,
            "terms": {",".join(map(str, mu)): str(c) for mu, c in poly.terms.items()},
        })
    payload = {"version": CACHE_FORMAT_VERSION, "entries": entries}
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)
    return len(entries)


def load_expansion_cache(path: str) -> int:
    """Merge a JSON snapshot into the in-memory cache; returns entries loaded.

    A snapshot with a different format version raises ValueError so callers
    can drop it and rebuild instead of silently working from stale data.
    """
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        return 0
    found = payload.get("version")
    if found != CACHE_FORMAT_VERSION:
        raise ValueError(f"cache format version {found}, expected {CACHE_FORMAT_VERSION}")
    count = 0
    for entry in payload["entries"]:
        kappa = normalize(entry["kappa"])
        beta = Fraction(entry["beta"])
        m = int(entry["m"])
        terms = {}
        for key, val in entry["terms"].items():
            mu = normalize(int(p) for p in key.split(",") if p != "")
            terms[mu] = Fraction(val)
        _EXPANSION_CACHE[(kappa, beta, m)] = EPolynomial(terms, m)
        count += 1
    return count


def clear_caches() -> None:
    """Drop all memoized expansions (mainly for tests)."""
    _EXPANSION_CACHE.clear()
