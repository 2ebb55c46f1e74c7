"""Counting Fourier-Mukai partners.

Untwisted: the count m of FM partners for a generic K3 of degree d, and the cubic
count (m, or ceil(m/2) when the marked-to-labelled map is a double cover).
Twisted: the closed form m' for Brauer classes of order kappa, and an
evaluation of the general orbit-sum formula in the generic rank-one regime that must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Factorization, distinct_odd_primes, euler_phi, factorize
from .hassett import (
    InadmissibleError,
    admissibility,
    expected_generator_q,
    has_associated_twisted_k3,
)

__all__ = [
    "CountReport",
    "Factorization",
    "InvalidKappaError",
    "cubic_fm_count",
    "epsilon",
    "euler_phi",
    "factorize",
    "generator_q",
    "isotropic_elements",
    "isotropic_orbits_under_negation",
    "ma_bound_generic",
    "oguiso_count",
    "require_twisted_regime",
    "twisted_decomposition",
    "twisted_fm_count",
    "valid_kappas",
]


class InvalidKappaError(ValueError):
    pass


@dataclass(frozen=True)
class CountReport:
    d: int
    branch: str
    m: int | None = None
    p_cubic: int | None = None
    kappa: int | None = None
    c: int | None = None
    m_prime: int | None = None
    lower_bound_cubic: int | None = None
    # untwisted only: closed form 2^(h-1) / 2^(h-2) and whether h exceeds its threshold
    closed_form: int | None = None
    nontrivial_hypothesis: bool | None = None


def _reasons(rep, keep: str, drop: str) -> list[str]:
    """Failing sub-conditions for one condition set, without the report prefix."""
    return [r.removeprefix(keep) for r in rep.reasons if not r.startswith(drop)]


def oguiso_count(degree: int) -> int:
    """Number of FM partners of a K3 with Picard lattice <degree>."""
    if degree < 2 or degree % 2:
        raise ValueError(f"polarization degree must be even and >= 2, got {degree}")
    a = 0
    n = degree
    while n % 2 == 0:
        n //= 2
        a += 1
    h = len(factorize(n).primes)
    if h == 0:
        return 1
    return 2 ** (h - 1) if a == 1 else 2**h


def cubic_fm_count(d: int) -> CountReport:
    rep = admissibility(d)
    if not rep.has_k3:
        raise InadmissibleError(d, _reasons(rep, "no K3: ", "no twisted K3: "))
    m = oguiso_count(d)
    h = distinct_odd_primes(d)
    if d % 6 == 2:
        p = m
        closed = 2 ** (h - 1)
        hyp = h > 1
        branch = "untwisted-d2"
    else:
        p = -(-m // 2)
        closed = 2 ** (h - 2)
        hyp = h > 2
        branch = "untwisted-d0"
    if hyp and closed != p:
        raise ArithmeticError(f"d={d}: closed form {closed} disagrees with count {p}")
    return CountReport(d=d, branch=branch, m=m, p_cubic=p, closed_form=closed,
                       nontrivial_hypothesis=hyp)


def twisted_decomposition(d: int, kappa: int) -> int:
    """c = d / kappa^2, which must be a positive even integer."""
    if kappa < 2:
        raise InvalidKappaError(f"kappa must be >= 2, got {kappa}")
    if d % (kappa * kappa):
        raise InvalidKappaError(f"kappa^2 = {kappa * kappa} does not divide d = {d}")
    c = d // (kappa * kappa)
    if c % 2:
        raise InvalidKappaError(f"c = d/kappa^2 = {c} is odd")
    return c


def require_twisted_regime(d: int) -> None:
    """Twisted K3 conditions on d plus 9 not dividing d; raises InadmissibleError otherwise."""
    if not has_associated_twisted_k3(d):
        rep = admissibility(d)
        raise InadmissibleError(d, _reasons(rep, "no twisted K3: ", "no K3: "))
    if d % 9 == 0:
        raise InadmissibleError(d, ["9 | d"])


def _check_twisted(d: int, kappa: int) -> int:
    require_twisted_regime(d)
    return twisted_decomposition(d, kappa)


def _twisted_h(c: int) -> int:
    return len(factorize(c // 2).primes) if c > 2 else 1


def twisted_fm_count(d: int, kappa: int) -> CountReport:
    c = _check_twisted(d, kappa)
    h = _twisted_h(c)
    phi = euler_phi(kappa)
    if kappa > 2 and c == 2:
        # phi(kappa) is even here, so phi * 2^(h-2) is an integer even at h = 1
        m_prime = phi * 2 ** (h - 1) // 2
        branch = "twisted-kappa>2-c2"
    else:
        m_prime = phi * 2 ** (h - 1)
        branch = "twisted-kappa2-or-c>2"
    lower = m_prime if d % 6 == 2 else -(-m_prime // 2)
    return CountReport(d=d, branch=branch, kappa=kappa, c=c, m_prime=m_prime,
                       lower_bound_cubic=lower)


def valid_kappas(d: int) -> list[int]:
    """All kappa >= 2 with kappa^2 | d and d / kappa^2 even."""
    out = []
    k = 2
    while k * k <= d:
        if d % (k * k) == 0 and (d // (k * k)) % 2 == 0:
            out.append(k)
        k += 1
    return out


def generator_q(d: int) -> Fraction:
    """q of the chosen generator of the cyclic group d(T(X, alpha))."""
    if d % 9 == 0:
        raise InadmissibleError(d, ["9 | d: discriminant group is not cyclic"])
    return expected_generator_q(d)


def isotropic_elements(order_d: int, q_gen, r: int) -> set[int]:
    """Residues k mod order_d of order r with k^2 q_gen = 0 in Q/2Z."""
    q_gen = Fraction(q_gen)
    if order_d % r:
        return set()
    return {k for k in range(order_d)
            if order_d // math.gcd(k, order_d) == r and (k * k * q_gen) % 2 == 0}


def isotropic_orbits_under_negation(elements, order_d: int) -> int:
    elements = {k % order_d for k in elements}
    if any((-k) % order_d not in elements for k in elements):
        raise ValueError("element set is not closed under negation")
    return len({min(k, (-k) % order_d) for k in elements})


def epsilon(r: int) -> int:
    if r < 1:
        raise ValueError("r must be >= 1")
    return 1 if r <= 2 else 2


def _disc_isometries_rank1(c: int) -> list[int]:
    """O(d(<c>)) for Z/c with q(g) = 1/c: units u mod c with u^2 = 1 (mod 2c)."""
    return [u for u in range(c) if math.gcd(u, c) == 1 and (u * u - 1) % (2 * c) == 0]


def _double_cosets(group: list[int], left: set[int], right: set[int], c: int) -> int:
    seen = set()
    count = 0
    for g in group:
        if g in seen:
            continue
        count += 1
        for a in left:
            for b in right:
                seen.add(a * g * b % c)
    return count


def ma_bound_generic(d: int, kappa: int) -> int:
    """Orbit-sum count of twisted partners for a generic (X, alpha) with NS = <l>, l^2 = c.

    Every isotropic x of order kappa lies in J (all give U + <l>), and
    O_Hdg(T(X, alpha)) = {+-1}, so the outer sum runs over negation orbits.
    The genus of <l> is {<l>}; it sits in G1 exactly when -1 acts trivially
    on d(<l>). tau is a double-coset count inside O(d(<l>)), with the
    Hodge isometries of (T_x, alpha_x) being the signs s with s = 1 mod kappa.
    """
    c = _check_twisted(d, kappa)
    iso = isotropic_elements(d, generator_q(d), kappa)
    n_orbits = isotropic_orbits_under_negation(iso, d)

    O_disc = _disc_isometries_rank1(c)
    O_lattice = {1 % c, -1 % c}
    hodge = {s % c for s in (1, -1) if (s - 1) % kappa == 0}
    tau = _double_cosets(O_disc, hodge, O_lattice, c)
    in_g1 = (-1) % c == 1 % c
    per_x = tau if in_g1 else epsilon(kappa) * tau
    return n_orbits * per_x
