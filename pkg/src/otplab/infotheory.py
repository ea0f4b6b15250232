"""Shannon quantities and the Information Causality criterion.

The random access code (RAC) experiment: Alice holds two uniformly random
bits, sends Bob a single classical bit, and Bob must guess the bit an
independent uniform index points at.  Information Causality (IC) bounds the
total efficiency I_2 = I(x_0 : guess | y=0) + I(x_1 : guess | y=1) by the
one communicated bit.

Running the standard RAC wiring over the two noisy box families gives
closed forms in the binary entropy h:

* correlated-key boxes (pads agree with probability mu): I_2 = 2 - 2 h(mu),
  so IC is violated exactly when h(mu) < 1/2;
* noisy internal signaling with a perfect pad: I_2 = 2 - h(mu), violating
  IC for every mu except 1/2.

Joint distributions are assembled exactly (rationals) by enumerating the
hidden variables and inputs under uniform input priors; floating point
enters only inside the logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .boxes import HALF, ONE, JointKeyDist, RationalLike, as_fraction
from .errors import ConstructionError, DomainError, PreconditionError

Outcome = tuple[int, ...]


def binary_entropy(mu: float | RationalLike) -> float:
    """h(mu) = -mu log2 mu - (1-mu) log2(1-mu), with 0 log 0 = 0."""
    p = float(mu) if isinstance(mu, float) else float(as_fraction(mu))
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"mu = {p} is outside [0, 1]")
    total = 0.0
    for q in (p, 1.0 - p):
        if q > 0.0:
            total -= q * math.log2(q)
    return total


@dataclass(frozen=True)
class JointDistribution:
    """Finite joint probability table with named variables, exact entries.

    ``probs`` maps outcome tuples (one integer per variable) to exact
    probabilities; omitted outcomes have probability zero.
    """

    variables: tuple[str, ...]
    probs: Mapping[Outcome, Fraction]

    def __post_init__(self):
        names = tuple(self.variables)
        if len(set(names)) != len(names) or not names:
            raise ConstructionError("variable names must be nonempty and distinct")
        frozen: dict[Outcome, Fraction] = {}
        total = Fraction(0)
        for outcome, p in self.probs.items():
            outcome = tuple(outcome)
            if len(outcome) != len(names):
                raise ConstructionError(
                    f"outcome {outcome} does not match variables {names}"
                )
            p = as_fraction(p)
            if p < 0:
                raise ConstructionError(f"P{outcome} = {p} is negative")
            if p > 0:
                frozen[outcome] = frozen.get(outcome, Fraction(0)) + p
                total += p
        if total != ONE:
            raise ConstructionError(f"probabilities sum to {total}, not exactly 1")
        object.__setattr__(self, "variables", names)
        object.__setattr__(self, "probs", frozen)

    def marginal(self, *names: str) -> "JointDistribution":
        """Marginalize onto the named variables (kept in the given order)."""
        try:
            idx = [self.variables.index(name) for name in names]
        except ValueError as exc:
            raise DomainError(f"unknown variable in {names!r}") from exc
        collapsed: dict[Outcome, Fraction] = {}
        for outcome, p in self.probs.items():
            key = tuple(outcome[i] for i in idx)
            collapsed[key] = collapsed.get(key, Fraction(0)) + p
        return JointDistribution(tuple(names), collapsed)


def entropy(dist: JointDistribution) -> float:
    """Base-2 Shannon entropy; rationals hit floating point only at the log."""
    return -math.fsum(
        float(p) * math.log2(float(p)) for p in dist.probs.values() if p > 0
    )


def mutual_information(dist: JointDistribution) -> float:
    """I(U:V) = H(U) + H(V) - H(U,V) for a two-variable joint."""
    if len(dist.variables) != 2:
        raise DomainError("mutual information needs a joint over exactly 2 variables")
    u, v = dist.variables
    return entropy(dist.marginal(u)) + entropy(dist.marginal(v)) - entropy(dist)


@dataclass(frozen=True)
class InformationReport:
    """RAC experiment summary: per-index informations, total, and IC verdict."""

    family: str
    mu: Fraction
    mutual_informations: tuple[float, ...]
    i_n: float
    m_cbits: int
    ic_satisfied: bool
    closed_form: float
    discrepancy: float


def _rac_report(
    family: str,
    mu: Fraction,
    joints: tuple[JointDistribution, ...],
    closed_form: float,
) -> tuple[tuple[JointDistribution, ...], InformationReport]:
    infos = tuple(mutual_information(j) for j in joints)
    i_n = math.fsum(infos)
    report = InformationReport(
        family=family,
        mu=mu,
        mutual_informations=infos,
        i_n=i_n,
        m_cbits=1,
        ic_satisfied=i_n <= 1,
        closed_form=closed_form,
        discrepancy=abs(i_n - closed_form),
    )
    return joints, report


def rac_run_notp(
    mu: RationalLike,
) -> tuple[tuple[JointDistribution, ...], InformationReport]:
    """RAC over the correlated-key box family (pads agree w.p. mu).

    Alice inputs x0^x1, reads her key k1 and sends k1^x0; Bob inputs his
    index y, reads b = (x0^x1)*y ^ k2 and guesses z = b ^ message.  The
    per-index joints P(x_k, z | y=k) are enumerated exactly over
    (x0, x1, k1, k2); the report compares I_2 against 2 - 2 h(mu).
    """
    mu = as_fraction(mu)
    keys = JointKeyDist.correlated(mu)
    joints = []
    for y in (0, 1):
        probs: dict[Outcome, Fraction] = {}
        for x0 in (0, 1):
            for x1 in (0, 1):
                for k1 in (0, 1):
                    for k2 in (0, 1):
                        weight = Fraction(1, 4) * keys.prob(k1, k2)
                        if weight == 0:
                            continue
                        b = ((x0 ^ x1) & y) ^ k2
                        z = b ^ (k1 ^ x0)
                        target = x0 if y == 0 else x1
                        probs[(target, z)] = probs.get((target, z), Fraction(0)) + weight
        joints.append(JointDistribution((f"x{y}", "z"), probs))
    closed = 2.0 - 2.0 * binary_entropy(float(mu))
    return _rac_report("notp", mu, tuple(joints), closed)


def rac_run_noisy_ontic(
    mu: RationalLike,
) -> tuple[tuple[JointDistribution, ...], InformationReport]:
    """RAC over the noisy-signaling box family (perfect pad, flipped input).

    Same wiring; the box transmits Alice's input through a bit-flip channel
    (flip probability 1-mu) before Bob's side computes, so his guess is
    z = c*y ^ x0 with c the possibly flipped x0^x1.  The index-0 guess is
    always exact; the index-1 guess is right with probability mu.  The
    report compares I_2 against 2 - h(mu).
    """
    mu = as_fraction(mu)
    if not 0 <= mu <= ONE:
        raise DomainError(f"mu = {mu} is outside [0, 1]")
    flip_weights = {0: mu, 1: ONE - mu}
    joints = []
    for y in (0, 1):
        probs: dict[Outcome, Fraction] = {}
        for x0 in (0, 1):
            for x1 in (0, 1):
                for flip in (0, 1):
                    for key in (0, 1):
                        weight = Fraction(1, 8) * flip_weights[flip]
                        if weight == 0:
                            continue
                        c = (x0 ^ x1) ^ flip
                        b = (c & y) ^ key
                        z = b ^ (key ^ x0)
                        target = x0 if y == 0 else x1
                        probs[(target, z)] = probs.get((target, z), Fraction(0)) + weight
        joints.append(JointDistribution((f"x{y}", "z"), probs))
    closed = 2.0 - binary_entropy(float(mu))
    return _rac_report("noisy-ontic", mu, tuple(joints), closed)


def ic_threshold_notp() -> float:
    """The mu* in (1/2, 1) where h(mu*) = 1/2: the IC boundary for
    correlated-key boxes.  Bisection to machine precision (well under 1e-12);
    IC is violated for mu above mu* (or symmetrically below 1 - mu*)."""
    lo, hi = 0.5, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if binary_entropy(mid) > 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class KeyInfoReport(NamedTuple):
    mutual_information: float
    violates_ic: bool


def key_mutual_information(keys: JointKeyDist) -> KeyInfoReport:
    """I(k1 : k2) of an admissible key pair, with the IC red flag.

    Requires the uniform Bob-side marginal (otherwise the box itself
    signals and the IC comparison is moot).  For the correlated family the
    value is 1 - h(mu); values above 1/2 bit mark boxes whose RAC run
    violates IC.
    """
    if not keys.is_ns_admissible:
        raise PreconditionError("key mutual information needs a uniform k2 marginal")
    joint = JointDistribution(
        ("k1", "k2"),
        {(k1, k2): keys.prob(k1, k2) for k1 in (0, 1) for k2 in (0, 1)},
    )
    value = mutual_information(joint)
    return KeyInfoReport(value, value > 0.5)
