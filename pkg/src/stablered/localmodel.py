"""Local arithmetic of tame base change at a point of the special fiber.

Covers the regular one-branch case, the cyclic quotient singularity created
above a node, its Jung-Hirzebruch resolution chain and the multiplicities of
the exceptional curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    InvalidParams,
    NonIntegralMultiplicity,
    NonPositiveMultiplicity,
    TameAssumptionViolated,
    WildDegree,
)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def mod_inverse(a: int, n: int) -> int:
    """Inverse of ``a`` modulo ``n`` by the extended Euclidean algorithm."""
    old_r, r = a % n, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise InvalidParams(f"{a} is not invertible modulo {n}")
    return old_s % n


@dataclass(frozen=True)
class OneBranchLocal:
    b: int
    n: int
    b_prime: int
    sheet_count: int


@dataclass(frozen=True)
class QuotientSingularityParams:
    a: int
    b: int
    n: int
    a_dd: int
    b_dd: int
    n_dd: int
    r: int | None
    point_count: int

    @property
    def regular(self) -> bool:
        return self.n_dd == 1


@dataclass(frozen=True)
class ResolutionChain:
    """Exceptional chain ``E_1 .. E_lambda``; ``E_1`` meets the ``m2`` branch."""

    entries: tuple[tuple[int, int], ...]
    boundary: tuple[int, int]

    @property
    def bs(self) -> list[int]:
        return [b for b, _ in self.entries]

    @property
    def mus(self) -> list[int]:
        return [mu for _, mu in self.entries]

    def __len__(self):
        return len(self.entries)


def one_branch(b: int, n: int) -> OneBranchLocal:
    if b < 1 or n < 1:
        raise InvalidParams("b and n must be positive")
    l = gcd(b, n)
    return OneBranchLocal(b=b, n=n, b_prime=b // l, sheet_count=l)


def node_params(a: int, b: int, n: int, p: int = 0) -> QuotientSingularityParams:
    """Normalization data above a node where branches of multiplicity ``a`` and ``b`` meet."""
    if a < 1 or b < 1 or n < 1:
        raise InvalidParams("a, b and n must be positive")
    if p and a % p == 0 and b % p == 0:
        raise TameAssumptionViolated(f"p={p} divides both branch multiplicities {a} and {b}")
    if p and n % p == 0:
        raise WildDegree(f"base-change degree {n} is divisible by p={p}")
    ga, gb, d = gcd(a, n), gcd(b, n), gcd(gcd(a, b), n)
    a_dd, b_dd = a // ga, b // gb
    n_dd = n * d // (ga * gb)
    r = None
    if n_dd > 1:
        r = (-a_dd * mod_inverse(b_dd, n_dd)) % n_dd
    return QuotientSingularityParams(a, b, n, a_dd, b_dd, n_dd, r, d)


def jung_hirzebruch(n: int, r: int) -> list[int]:
    """Descending continued fraction ``n/r = b_1 - 1/(b_2 - ...)`` with all ``b_j >= 2``."""
    if not (n >= 2 and 1 <= r < n and gcd(n, r) == 1):
        raise InvalidParams(f"need n >= 2, 1 <= r < n, gcd(n, r) = 1; got n={n}, r={r}")
    bs = []
    while r:
        b = -(-n // r)
        bs.append(b)
        n, r = r, b * r - n
    return bs


def evaluate_continued_fraction(bs: list[int]) -> Fraction:
    value = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        value = b - 1 / value
    return value


def solve_tridiagonal(sub, diag, sup, rhs) -> list[Fraction]:
    """Thomas algorithm over exact rationals."""
    size = len(diag)
    c = [Fraction(0)] * size
    d = [Fraction(0)] * size
    for i in range(size):
        denom = Fraction(diag[i]) - (sub[i] * c[i - 1] if i else 0)
        if denom == 0:
            raise InvalidParams("singular tridiagonal system")
        c[i] = Fraction(sup[i]) / denom if i < size - 1 else Fraction(0)
        d[i] = (Fraction(rhs[i]) - (sub[i] * d[i - 1] if i else 0)) / denom
    x = [Fraction(0)] * size
    for i in reversed(range(size)):
        x[i] = d[i] - (c[i] * x[i + 1] if i < size - 1 else 0)
    return x


def chain_multiplicities(bs: list[int], m2: int, m1: int) -> list[int]:
    """Solve ``mu_{j-1} + mu_{j+1} = b_j mu_j`` with ``mu_0 = m2`` and ``mu_{lambda+1} = m1``."""
    if any(b < 2 for b in bs):
        raise InvalidParams("every b_j must be at least 2")
    if m2 == 0 or m1 == 0:
        raise InvalidParams("a boundary multiplicity of 0 (one analytic branch) is not supported")
    if not bs:
        return []
    k = len(bs)
    # -mu_{j-1} + b_j mu_j - mu_{j+1} = 0, boundary terms moved to the right
    rhs = [0] * k
    rhs[0] += m2
    rhs[-1] += m1
    sol = solve_tridiagonal([-1] * k, list(bs), [-1] * k, rhs)
    out = []
    for j, mu in enumerate(sol, 1):
        if mu.denominator != 1:
            raise NonIntegralMultiplicity(f"mu_{j} = {mu} is not an integer")
        if mu <= 0:
            raise NonPositiveMultiplicity(f"mu_{j} = {mu} is not positive")
        out.append(int(mu))
    return out


def resolve_node(params: QuotientSingularityParams, branch_mults: tuple[int, int]) -> ResolutionChain:
    """Minimal resolution chain above a singular node.

    ``branch_mults`` is ``(m_a, m_b)``; the chain starts next to the ``b`` branch.
    """
    if params.n_dd < 2:
        raise InvalidParams("the point is regular (n'' = 1); there is nothing to resolve")
    m_a, m_b = branch_mults
    if m_a < 1 or m_b < 1:
        raise InvalidParams("both branch multiplicities must be positive")
    bs = jung_hirzebruch(params.n_dd, params.r)
    mus = chain_multiplicities(bs, m2=m_b, m1=m_a)
    return ResolutionChain(tuple(zip(bs, mus)), (m_b, m_a))
