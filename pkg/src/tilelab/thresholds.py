"""Frobenius numbers and closed-form codegree thresholds for tiling problems.

All values are exact: integers or :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from .errors import DomainError, UndefinedFrobeniusError
from .hypergraph import Hypergraph, PartiteProfile, as_profile
from .invariants import InvariantReport, format_fraction, structural_invariants


# ---------------------------------------------------------------------------
# Frobenius numbers


def _positive_generators(b: Sequence[int]) -> list[int]:
    if any(x < 0 for x in b):
        raise DomainError(f"Frobenius generators must be nonnegative, got {list(b)}")
    pos = sorted(x for x in b if x > 0)
    if not pos:
        raise DomainError("Frobenius number needs at least one positive generator")
    if reduce(math.gcd, pos) != 1:
        raise UndefinedFrobeniusError(
            f"gcd of positive generators {pos} is {reduce(math.gcd, pos)}, Frobenius number undefined"
        )
    return pos


def frobenius(b: Sequence[int]) -> int:
    """Largest integer not a nonnegative combination of ``b``; zeros are ignored.

    Returns -1 when some generator is 1. Uses the round-robin shortest-path
    computation over residues modulo the smallest generator.
    """
    pos = _positive_generators(b)
    a = pos[0]
    if a == 1:
        return -1
    inf = math.inf
    # least[r]: smallest representable number congruent to r mod a
    least = [inf] * a
    least[0] = 0
    for g in dict.fromkeys(pos[1:]):
        d = math.gcd(a, g)
        for p in range(d):
            cur = min(least[q] for q in range(p, a, d))
            if cur == inf:
                continue
            for _ in range(a // d):
                cur += g
                r = cur % a
                cur = min(cur, least[r])
                least[r] = cur
    return int(max(least)) - a


def frobenius_brute(b: Sequence[int]) -> int:
    """Reference implementation: representability table up to (max-1)^2 + max."""
    pos = _positive_generators(b)
    if 1 in pos:
        return -1
    top = max(pos)
    limit = (top - 1) ** 2 + top + 1
    rep = [False] * (limit + 1)
    rep[0] = True
    for x in range(1, limit + 1):
        rep[x] = any(x >= g and rep[x - g] for g in pos)
    return max(x for x in range(limit + 1) if not rep[x])


def profile_differences(profile) -> list[int]:
    profile = as_profile(profile)
    a1 = profile.sizes[0]
    return [a - a1 for a in profile.sizes[1:]]


def profile_constant_C(profile) -> int:
    """C = g(a_2 - a_1, ..., a_k - a_1) + 1 for a profile with coprime differences."""
    diffs = profile_differences(profile)
    g = reduce(math.gcd, diffs, 0)
    if g != 1:
        raise DomainError(
            f"profile {as_profile(profile)} has gcd of differences {g or 'undefined'}; constant C needs gcd 1"
        )
    return frobenius(diffs) + 1


# ---------------------------------------------------------------------------
# thresholds


@dataclass(frozen=True)
class ThresholdReport:
    value: Fraction
    case_tag: str
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        value = self.value
        return {
            "value": value.numerator if value.denominator == 1 else format_fraction(value),
            "case": self.case_tag,
            "witnesses": self.witnesses,
        }


def smallest_prime_factor(d: int) -> int:
    if d < 2:
        raise DomainError(f"{d} has no prime factor")
    p = 2
    while p * p <= d:
        if d % p == 0:
            return p
        p += 1
    return d


def mycroft_case(report: InvariantReport, n: int) -> ThresholdReport:
    """Main term of Mycroft's three-case bound, from precomputed invariants."""
    s_set = report.s_set
    gcd_s = report.gcd_s
    witnesses = {"S": sorted(s_set), "gcd_S": gcd_s, "gcd_F": report.gcd_f, "sigma": format_fraction(report.sigma)}
    if s_set == {1} or gcd_s > 1:
        return ThresholdReport(Fraction(n, 2), "half", witnesses)
    if report.gcd_f == 1:
        return ThresholdReport(report.sigma * n, "sigma", witnesses)
    if gcd_s == 1 and report.gcd_f is not None and report.gcd_f > 1:
        p = smallest_prime_factor(report.gcd_f)
        witnesses["p"] = p
        return ThresholdReport(max(report.sigma * n, Fraction(n, p)), "max-sigma-prime", witnesses)
    raise DomainError(f"invariants {witnesses} match no case of the threshold")


def mycroft_threshold(F: Hypergraph, n: int, budget=None) -> ThresholdReport:
    """Asymptotic threshold main term for perfect F-tilings; the o(n) term is not evaluated."""
    if n <= 0 or n % F.n:
        raise DomainError(f"n = {n} must be a positive multiple of |V(F)| = {F.n}")
    report = mycroft_case(structural_invariants(F, budget), n)
    report.witnesses["error_term"] = "o(n)"
    return report


def degree_bound(profile, n: int, turan_fn: Callable[[int], int]) -> Fraction:
    """a_1 n/m + f(n) + C with f(n) = max over 1-C <= i <= 1 of ex(n_i, K) k / binom(n_i, k-1).

    Here n_i = (m - a_1) n / m + i and ``turan_fn`` supplies ex(., K).
    """
    return degree_bound_report(profile, n, turan_fn).value


def degree_bound_report(profile, n: int, turan_fn: Callable[[int], int]) -> ThresholdReport:
    profile = as_profile(profile)
    k, m, a1 = profile.k, profile.m, profile.sizes[0]
    if n <= 0 or n % m:
        raise DomainError(f"n = {n} must be a positive multiple of m = {m}")
    C = profile_constant_C(profile)
    base = (m - a1) * n // m
    terms = {}
    for i in range(1 - C, 2):
        ni = base + i
        denom = math.comb(ni, k - 1)
        if denom == 0:
            raise DomainError(f"binom({ni}, {k - 1}) vanishes; n too small")
        terms[ni] = Fraction(turan_fn(ni) * k, denom)
    f = max(terms.values())
    value = Fraction(a1 * n, m) + f + C
    return ThresholdReport(
        value,
        "turan-bound",
        {"C": C, "f": format_fraction(f), "terms": {str(ni): format_fraction(t) for ni, t in terms.items()}},
    )


def steiner_divisibility(k: int, n_prime: int) -> bool:
    """Necessary conditions for S(k-1, k, n'): (k-i) | binom(n'-i, k-1-i) for 0 <= i <= k-2."""
    if k < 2 or n_prime < k:
        raise DomainError(f"need k >= 2 and n' >= k, got k={k}, n'={n_prime}")
    return all(math.comb(n_prime - i, k - 1 - i) % (k - i) == 0 for i in range(k - 1))


def k112_threshold(k: int, n: int) -> int:
    """Exact codegree threshold for K^(k)(1, ..., 1, 2)-factors (large n)."""
    if k < 3:
        raise DomainError(f"k must be at least 3, got {k}")
    if n <= 0 or n % (k + 1):
        raise DomainError(f"n = {n} must be a positive multiple of k+1 = {k + 1}")
    n_prime = k * n // (k + 1) + 1
    bump = steiner_divisibility(k, n_prime)
    return n // (k + 1) + (1 if bump else 0)


def k112_report(k: int, n: int) -> dict:
    value = k112_threshold(k, n)
    n_prime = k * n // (k + 1) + 1
    return {"value": value, "divisibility": value != n // (k + 1), "n_prime": n_prime}


def cycle_threshold(k: int, s: int, n: int) -> Fraction:
    """ceil(s/2) n / (s(k-1)), the exact threshold for loose-cycle factors."""
    if k < 4 or s < 2:
        raise DomainError(f"need k >= 4 and s >= 2, got k={k}, s={s}")
    if n <= 0 or n % (s * (k - 1)):
        raise DomainError(f"n = {n} must be a positive multiple of s(k-1) = {s * (k - 1)}")
    return Fraction(-(-s // 2) * n, s * (k - 1))
