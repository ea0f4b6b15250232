"""Hidden-variable box specifications and their exact correlation tables.

A bipartite box takes an input ``x`` on Alice's side (one of ``m`` settings)
and ``y`` on Bob's side (one of ``n`` settings) and returns one bit to each
party.  The boxes built here are *one-time-pad crypto-systems*: a hidden key
bit is drawn inside the box, Alice's output is ``g(x) XOR key`` (so she can
recover the key), and Bob's output is the target bit ``f(x,y)`` encrypted by
the same key,

    P(a,b|x,y) = sum_k  p(k) * [a = g(x)^k] * [b = f(x,y)^k].

The noisy variant gives the two sides separately drawn but correlated keys
``k1, k2 ~ p(k1,k2)``:

    P(a,b|x,y) = sum_{k1,k2}  p(k1,k2) * [a = g(x)^k1] * [b = f(x,y)^k2].

Everything in this module is exact: probabilities are `fractions.Fraction`
end to end, no floating point.  All value types are immutable; every
operation except :func:`sample_outcome` is a pure function.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import ConstructionError, DomainError

RationalLike = Union[Fraction, int, str]

HALF = Fraction(1, 2)
ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an exact value (Fraction, int, or 'num/den' / decimal string).

    Floats are rejected: binary floats silently misrepresent most decimal
    probabilities and would break the exact-iff claims this library makes.
    """
    if isinstance(value, float):
        raise DomainError(
            f"refusing float {value!r}: pass a Fraction, int, or string like '9/10'"
        )
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {value!r}: {exc}") from exc
    raise DomainError(f"cannot interpret {value!r} as an exact rational")


def _check_probability(p: Fraction, what: str) -> Fraction:
    if not ZERO <= p <= ONE:
        raise DomainError(f"{what} = {p} is outside [0, 1]")
    return p


def _as_bit(value: object, what: str) -> int:
    if value is None:
        raise ConstructionError(f"{what} is undefined (partial map)")
    if isinstance(value, bool):
        value = int(value)
    if not isinstance(value, int) or value not in (0, 1):
        raise ConstructionError(f"{what} = {value!r} is not a bit")
    return value


@dataclass(frozen=True)
class Scenario:
    """Input counts for a bipartite box with binary outputs on both sides."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ConstructionError(f"m = {self.m!r} must be an integer >= 1")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ConstructionError(f"n = {self.n!r} must be an integer >= 1")

    def input_pairs(self) -> Iterator[tuple[int, int]]:
        for x in range(self.m):
            for y in range(self.n):
                yield x, y

    def check_inputs(self, x: int, y: int) -> None:
        if not (isinstance(x, int) and 0 <= x < self.m):
            raise DomainError(f"Alice input x = {x!r} not in range(0, {self.m})")
        if not (isinstance(y, int) and 0 <= y < self.n):
            raise DomainError(f"Bob input y = {y!r} not in range(0, {self.n})")


@dataclass(frozen=True)
class KeyDist:
    """Distribution of the single hidden key bit.

    ``bias`` is the signed deviation from uniformity, ``r = 2*p0 - 1``; the
    key is a safe one-time pad exactly when ``r = 0``.
    """

    p0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p0", _check_probability(as_fraction(self.p0), "p0"))

    @classmethod
    def uniform(cls) -> "KeyDist":
        return cls(HALF)

    @property
    def p1(self) -> Fraction:
        return ONE - self.p0

    @property
    def bias(self) -> Fraction:
        return 2 * self.p0 - 1

    @property
    def is_uniform(self) -> bool:
        return self.p0 == HALF

    def prob(self, key: int) -> Fraction:
        if key not in (0, 1):
            raise DomainError(f"key value {key!r} is not a bit")
        return self.p0 if key == 0 else self.p1


@dataclass(frozen=True)
class JointKeyDist:
    """Joint distribution of the two key bits of a noisy box.

    ``table[k1][k2]`` holds p(k1,k2).  The box hides Alice's input from Bob
    at the operational level iff Bob's key marginal is uniform,
    ``p(k2) = 1/2`` for both values; :attr:`is_ns_admissible` reports that.
    """

    table: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __post_init__(self):
        rows = tuple(self.table)
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise ConstructionError("joint key table must be 2x2")
        frozen = tuple(
            tuple(
                _check_probability(as_fraction(p), f"p(k1={k1},k2={k2})")
                for k2, p in enumerate(row)
            )
            for k1, row in enumerate(rows)
        )
        total = sum(p for row in frozen for p in row)
        if total != ONE:
            raise ConstructionError(f"joint key probabilities sum to {total}, not 1")
        object.__setattr__(self, "table", frozen)

    @classmethod
    def perfectly_correlated(cls) -> "JointKeyDist":
        """p(k1,k2) = (1/2) * [k1 = k2]: both sides hold the same fresh pad."""
        return cls(((HALF, ZERO), (ZERO, HALF)))

    @classmethod
    def correlated(cls, mu: RationalLike) -> "JointKeyDist":
        """p(k1,k2) = (1/2) * (mu*[k1=k2] + (1-mu)*[k1!=k2]).

        Uniform marginals on both sides for every mu; the two pads agree
        with probability mu.
        """
        mu = _check_probability(as_fraction(mu), "mu")
        same = mu / 2
        diff = (ONE - mu) / 2
        return cls(((same, diff), (diff, same)))

    def prob(self, k1: int, k2: int) -> Fraction:
        if k1 not in (0, 1) or k2 not in (0, 1):
            raise DomainError(f"key values ({k1!r}, {k2!r}) are not bits")
        return self.table[k1][k2]

    def lambda1_marginal(self, k1: int) -> Fraction:
        return self.table[k1][0] + self.table[k1][1]

    def lambda2_marginal(self, k2: int) -> Fraction:
        return self.table[0][k2] + self.table[1][k2]

    @property
    def is_ns_admissible(self) -> bool:
        return self.lambda2_marginal(0) == HALF and self.lambda2_marginal(1) == HALF


def _freeze_g(g, scenario: Scenario) -> tuple[int, ...]:
    if callable(g):
        values = [g(x) for x in range(scenario.m)]
    else:
        values = list(g)
        if len(values) != scenario.m:
            raise ConstructionError(
                f"g has {len(values)} entries, scenario needs {scenario.m}"
            )
    return tuple(_as_bit(v, f"g({x})") for x, v in enumerate(values))


def _freeze_f(f, scenario: Scenario) -> tuple[tuple[int, ...], ...]:
    if callable(f):
        values = [[f(x, y) for y in range(scenario.n)] for x in range(scenario.m)]
    else:
        values = [list(row) for row in f]
        if len(values) != scenario.m or any(len(row) != scenario.n for row in values):
            raise ConstructionError(
                f"f must be a total {scenario.m}x{scenario.n} map"
            )
    return tuple(
        tuple(_as_bit(v, f"f({x},{y})") for y, v in enumerate(row))
        for x, row in enumerate(values)
    )


@dataclass(frozen=True)
class OtpBoxSpec:
    """A box description: output maps ``g``, ``f`` plus the key distribution."""

    scenario: Scenario
    g: tuple[int, ...]
    f: tuple[tuple[int, ...], ...]
    key: KeyDist

    def __post_init__(self):
        object.__setattr__(self, "g", _freeze_g(self.g, self.scenario))
        object.__setattr__(self, "f", _freeze_f(self.f, self.scenario))
        if not isinstance(self.key, KeyDist):
            raise ConstructionError("key must be a KeyDist")

    @classmethod
    def from_functions(cls, m: int, n: int, g, f, key: KeyDist) -> "OtpBoxSpec":
        return cls(Scenario(m, n), g, f, key)

    def f_depends_on_x(self) -> bool:
        """True iff f(., y) is non-constant for some fixed y."""
        return any(
            len({self.f[x][y] for x in range(self.scenario.m)}) > 1
            for y in range(self.scenario.n)
        )


@dataclass(frozen=True)
class NOtpBoxSpec:
    """Noisy-key variant of :class:`OtpBoxSpec`: two correlated key bits."""

    scenario: Scenario
    g: tuple[int, ...]
    f: tuple[tuple[int, ...], ...]
    keys: JointKeyDist

    def __post_init__(self):
        object.__setattr__(self, "g", _freeze_g(self.g, self.scenario))
        object.__setattr__(self, "f", _freeze_f(self.f, self.scenario))
        if not isinstance(self.keys, JointKeyDist):
            raise ConstructionError("keys must be a JointKeyDist")

    @classmethod
    def from_functions(cls, m: int, n: int, g, f, keys: JointKeyDist) -> "NOtpBoxSpec":
        return cls(Scenario(m, n), g, f, keys)


Entries = tuple[tuple[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]], ...], ...]


@dataclass(frozen=True)
class CorrelationTable:
    """Exact conditional distribution P(a,b|x,y), binary outputs.

    ``entries[x][y][a][b]`` holds P(a,b|x,y).  Construction validates
    nonnegativity and exact normalization in every context (x,y).
    """

    scenario: Scenario
    entries: Entries

    def __post_init__(self):
        m, n = self.scenario.m, self.scenario.n
        rows = tuple(tuple(cell) for cell in self.entries)
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ConstructionError("entries shape does not match scenario")
        frozen = []
        for x in range(m):
            row = []
            for y in range(n):
                cell = tuple(tuple(as_fraction(p) for p in ab) for ab in rows[x][y])
                if len(cell) != 2 or any(len(c) != 2 for c in cell):
                    raise ConstructionError("each context needs a 2x2 outcome block")
                for a in (0, 1):
                    for b in (0, 1):
                        if cell[a][b] < 0:
                            raise ConstructionError(
                                f"P({a},{b}|{x},{y}) = {cell[a][b]} is negative"
                            )
                total = cell[0][0] + cell[0][1] + cell[1][0] + cell[1][1]
                if total != ONE:
                    raise ConstructionError(
                        f"P(.,.|{x},{y}) sums to {total}, not exactly 1"
                    )
                row.append(cell)
            frozen.append(tuple(row))
        object.__setattr__(self, "entries", tuple(frozen))

    @classmethod
    def from_function(
        cls, m: int, n: int, fn: Callable[[int, int, int, int], RationalLike]
    ) -> "CorrelationTable":
        """Build from fn(a, b, x, y) -> exact probability."""
        scenario = Scenario(m, n)
        entries = tuple(
            tuple(
                tuple(tuple(as_fraction(fn(a, b, x, y)) for b in (0, 1)) for a in (0, 1))
                for y in range(n)
            )
            for x in range(m)
        )
        return cls(scenario, entries)

    def prob(self, a: int, b: int, x: int, y: int) -> Fraction:
        self.scenario.check_inputs(x, y)
        if a not in (0, 1) or b not in (0, 1):
            raise DomainError(f"outputs ({a!r}, {b!r}) are not bits")
        return self.entries[x][y][a][b]

    def alice_marginal(self, a: int, x: int, y: int) -> Fraction:
        """P(a|x,y) = sum_b P(a,b|x,y)."""
        cell = self.entries[x][y]
        return cell[a][0] + cell[a][1]

    def bob_marginal(self, b: int, x: int, y: int) -> Fraction:
        """P(b|x,y) = sum_a P(a,b|x,y)."""
        cell = self.entries[x][y]
        return cell[0][b] + cell[1][b]


def evaluate_otp(spec: OtpBoxSpec) -> CorrelationTable:
    """Correlation table of a box: sum the key out of the output rule.

    P(a,b|x,y) = sum_k p(k) * [a = g(x)^k] * [b = f(x,y)^k].
    """

    def entry(a: int, b: int, x: int, y: int) -> Fraction:
        total = ZERO
        for key in (0, 1):
            if a == spec.g[x] ^ key and b == spec.f[x][y] ^ key:
                total += spec.key.prob(key)
        return total

    return CorrelationTable.from_function(spec.scenario.m, spec.scenario.n, entry)


def evaluate_notp(spec: NOtpBoxSpec) -> CorrelationTable:
    """Correlation table of a noisy-key box.

    P(a,b|x,y) = sum_{k1,k2} p(k1,k2) * [a = g(x)^k1] * [b = f(x,y)^k2].
    """

    def entry(a: int, b: int, x: int, y: int) -> Fraction:
        total = ZERO
        for k1 in (0, 1):
            if a != spec.g[x] ^ k1:
                continue
            for k2 in (0, 1):
                if b == spec.f[x][y] ^ k2:
                    total += spec.keys.prob(k1, k2)
        return total

    return CorrelationTable.from_function(spec.scenario.m, spec.scenario.n, entry)


def pr_box() -> CorrelationTable:
    """P(a,b|x,y) = 1/2 * [a^b = x*y] on the 2,2-input scenario."""
    return CorrelationTable.from_function(
        2, 2, lambda a, b, x, y: HALF if a ^ b == x * y else ZERO
    )


def anti_pr_box() -> CorrelationTable:
    """P(a,b|x,y) = 1/2 * [a^b = x*y ^ 1] on the 2,2-input scenario."""
    return CorrelationTable.from_function(
        2, 2, lambda a, b, x, y: HALF if a ^ b == (x * y) ^ 1 else ZERO
    )


def convex_mixture(
    components: Iterable[tuple[RationalLike, CorrelationTable]]
) -> CorrelationTable:
    """Exact convex combination of tables over a common scenario."""
    components = [(as_fraction(w), t) for w, t in components]
    if not components:
        raise DomainError("mixture needs at least one component")
    scenario = components[0][1].scenario
    if any(t.scenario != scenario for _, t in components):
        raise DomainError("mixture components must share one scenario")
    weight_sum = sum(w for w, _ in components)
    if weight_sum != ONE or any(w < 0 for w, _ in components):
        raise DomainError(f"weights must be nonnegative and sum to 1, got {weight_sum}")

    def entry(a, b, x, y):
        return sum((w * t.entries[x][y][a][b] for w, t in components), ZERO)

    return CorrelationTable.from_function(scenario.m, scenario.n, entry)


def isotropic(q: RationalLike) -> CorrelationTable:
    """Mixture q*PR + (1-q)*anti-PR, computed exactly."""
    q = _check_probability(as_fraction(q), "q")
    return convex_mixture([(q, pr_box()), (ONE - q, anti_pr_box())])


def noisy_ontic_box(mu: RationalLike) -> CorrelationTable:
    """PR-type box whose internal input transfer is a bit-flip channel.

    Alice's input x reaches Bob's side of the box intact with probability mu
    and flipped with probability 1-mu; the key stays a perfect uniform pad:

    P(a,b|x,y) = mu   * 1/2 sum_k [a=k][b = x*y ^ k]
               + (1-mu) * 1/2 sum_k [a=k][b = (x^1)*y ^ k].
    """
    mu = _check_probability(as_fraction(mu), "mu")

    def entry(a: int, b: int, x: int, y: int) -> Fraction:
        total = ZERO
        for key in (0, 1):
            if a != key:
                continue
            if b == (x * y) ^ key:
                total += mu * HALF
            if b == ((x ^ 1) * y) ^ key:
                total += (ONE - mu) * HALF
        return total

    return CorrelationTable.from_function(2, 2, entry)


def local_deterministic(
    alice_strategy: Sequence[int], bob_strategy: Sequence[int]
) -> CorrelationTable:
    """Deterministic local box: a = alice_strategy[x], b = bob_strategy[y]."""
    a_map = tuple(_as_bit(v, f"alice_strategy[{x}]") for x, v in enumerate(alice_strategy))
    b_map = tuple(_as_bit(v, f"bob_strategy[{y}]") for y, v in enumerate(bob_strategy))
    if not a_map or not b_map:
        raise ConstructionError("strategies must cover at least one input")
    return CorrelationTable.from_function(
        len(a_map),
        len(b_map),
        lambda a, b, x, y: ONE if (a, b) == (a_map[x], b_map[y]) else ZERO,
    )


def sample_outcome(
    table: CorrelationTable, x: int, y: int, rng: random.Random
) -> tuple[int, int]:
    """Draw (a, b) from the exact conditional distribution at (x, y).

    The draw is exact: a single uniform integer below the cell's common
    denominator is compared against integer cumulative weights, so each
    outcome occurs with exactly its table probability.  Identical generator
    states yield identical draws.
    """
    table.scenario.check_inputs(x, y)
    cell = table.entries[x][y]
    probs = [cell[a][b] for a in (0, 1) for b in (0, 1)]
    denom = math.lcm(*(p.denominator for p in probs))
    draw = rng.randrange(denom)
    acc = 0
    for idx, p in enumerate(probs):
        acc += p.numerator * (denom // p.denominator)
        if draw < acc:
            return divmod(idx, 2)
    raise AssertionError("normalized table must cover the draw range")
