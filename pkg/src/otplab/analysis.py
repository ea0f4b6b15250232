"""No-signaling checks, CHSH functionals, and vertex model extraction.

Three layers of analysis over exact correlation tables:

* operational no-signaling: each party's output marginal must be
  independent of the other party's input choice, with explicit witnesses
  when it is not;
* the CHSH family for the 2,2-input scenario, which together with
  no-signaling is a complete locality test there;
* recognition of full-output vertices (all entries in {0, 1/2}, outputs
  strictly correlated or anti-correlated per context) and the constructive
  extraction of the one-time-pad model that reproduces them.

All functions are pure and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .boxes import (
    HALF,
    ONE,
    CorrelationTable,
    JointKeyDist,
    KeyDist,
    NOtpBoxSpec,
    OtpBoxSpec,
    RationalLike,
    Scenario,
    as_fraction,
    evaluate_otp,
)
from .errors import ConstructionError, DomainError, PreconditionError, VertexRejection

ALICE_TO_BOB = "alice->bob"
BOB_TO_ALICE = "bob->alice"


@dataclass(frozen=True)
class SignalingWitness:
    """One marginal that shifts with the remote input.

    ``direction`` names who signals to whom; the receiving party's output
    bit and input setting are fixed while the two ``remote_inputs`` of the
    sender produce the two differing ``marginals``.
    """

    direction: str
    output: int
    local_input: int
    remote_inputs: tuple[int, int]
    marginals: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class NsReport:
    alice_to_bob_ns: bool
    bob_to_alice_ns: bool
    witnesses: tuple[SignalingWitness, ...]

    @property
    def is_no_signaling(self) -> bool:
        return self.alice_to_bob_ns and self.bob_to_alice_ns


def ns_check(table: CorrelationTable) -> NsReport:
    """Decide no-signaling in both directions, with exhaustive witnesses.

    Alice-to-Bob no-signaling holds iff Bob's marginal sum_a P(a,b|x,y) is
    the same exact rational for every x, at each fixed (b,y); symmetrically
    for the other direction.  Every violating input pair is reported.
    """
    m, n = table.scenario.m, table.scenario.n
    witnesses: list[SignalingWitness] = []

    for y in range(n):
        for b in (0, 1):
            values = [table.bob_marginal(b, x, y) for x in range(m)]
            for x1 in range(m):
                for x2 in range(x1 + 1, m):
                    if values[x1] != values[x2]:
                        witnesses.append(
                            SignalingWitness(
                                ALICE_TO_BOB, b, y, (x1, x2), (values[x1], values[x2])
                            )
                        )
    alice_to_bob_ns = not witnesses

    before = len(witnesses)
    for x in range(m):
        for a in (0, 1):
            values = [table.alice_marginal(a, x, y) for y in range(n)]
            for y1 in range(n):
                for y2 in range(y1 + 1, n):
                    if values[y1] != values[y2]:
                        witnesses.append(
                            SignalingWitness(
                                BOB_TO_ALICE, a, x, (y1, y2), (values[y1], values[y2])
                            )
                        )
    bob_to_alice_ns = len(witnesses) == before

    return NsReport(alice_to_bob_ns, bob_to_alice_ns, tuple(witnesses))


class Lemma1Verdict(NamedTuple):
    f_depends_on_x: bool
    ns: bool
    key_uniform: bool


def lemma1_verdict(spec: OtpBoxSpec) -> Lemma1Verdict:
    """Check the key-uniformity law on a concrete box.

    When f genuinely varies with Alice's input, the evaluated table is
    no-signaling iff the key is exactly uniform; when f ignores x there is
    nothing to signal and the table is no-signaling for every key.
    """
    depends = spec.f_depends_on_x()
    report = ns_check(evaluate_otp(spec))
    return Lemma1Verdict(depends, report.is_no_signaling, spec.key.is_uniform)


# Sign patterns with an odd number of minus signs: "neg" variants carry a
# single negative sign at the named (x,y), "pos" variants are their global
# negations (single positive sign at the named position).
CHSH_VARIANTS: tuple[str, ...] = (
    "chsh-neg-00",
    "chsh-neg-01",
    "chsh-neg-10",
    "chsh-neg-11",
    "chsh-pos-00",
    "chsh-pos-01",
    "chsh-pos-10",
    "chsh-pos-11",
)

CANONICAL_CHSH_VARIANT = "chsh-neg-11"


def _chsh_signs(variant: str) -> dict[tuple[int, int], int]:
    if variant not in CHSH_VARIANTS:
        raise DomainError(f"unknown CHSH variant {variant!r}")
    kind, pos = variant.rsplit("-", 1)
    special = (int(pos[0]), int(pos[1]))
    base = 1 if kind == "chsh-neg" else -1
    return {
        (x, y): (-base if (x, y) == special else base)
        for x in (0, 1)
        for y in (0, 1)
    }


def correlator(table: CorrelationTable, x: int, y: int) -> Fraction:
    """E(x,y) = sum_{a,b} (-1)^(a^b) P(a,b|x,y)."""
    cell = table.entries[x][y]
    return cell[0][0] + cell[1][1] - cell[0][1] - cell[1][0]


def chsh_value(
    table: CorrelationTable, variant: str = CANONICAL_CHSH_VARIANT
) -> Fraction:
    """S = sum_{x,y} s(x,y) E(x,y) for the chosen sign pattern, exact."""
    if table.scenario != Scenario(2, 2):
        raise DomainError("CHSH is defined for the 2,2-input scenario only")
    signs = _chsh_signs(variant)
    return sum(
        (signs[(x, y)] * correlator(table, x, y) for x in (0, 1) for y in (0, 1)),
        Fraction(0),
    )


def chsh_family(table: CorrelationTable) -> dict[str, Fraction]:
    """All eight CHSH values keyed by variant name."""
    return {variant: chsh_value(table, variant) for variant in CHSH_VARIANTS}


class LocalityVerdict(NamedTuple):
    is_local: bool
    max_chsh: Fraction


def local_2222(table: CorrelationTable) -> LocalityVerdict:
    """Complete locality test for no-signaling 2,2-input tables.

    A no-signaling table in this scenario is local iff every member of the
    CHSH family stays within [-2, 2]; the largest |S| is returned alongside.
    Signaling input is rejected: the test is undefined off the NS polytope.
    """
    if table.scenario != Scenario(2, 2):
        raise DomainError("locality test is defined for the 2,2-input scenario only")
    if not ns_check(table).is_no_signaling:
        raise PreconditionError("locality test requires a no-signaling table")
    max_chsh = max(abs(s) for s in chsh_family(table).values())
    return LocalityVerdict(max_chsh <= 2, max_chsh)


@dataclass(frozen=True)
class VertexStructure:
    """Correlation/anti-correlation pattern of a full-output vertex.

    ``h[x][y]`` is 1 where the vertex anti-correlates the outputs
    (a^b = 1 on its support) and 0 where it correlates them.
    """

    scenario: Scenario
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.h)
        if len(rows) != self.scenario.m or any(
            len(row) != self.scenario.n for row in rows
        ):
            raise ConstructionError("h must be a total m x n map")
        for row in rows:
            for v in row:
                if v not in (0, 1):
                    raise ConstructionError(f"h entry {v!r} is not a bit")
        object.__setattr__(self, "h", rows)


def full_output_vertex_structure(table: CorrelationTable) -> VertexStructure:
    """Recognize a full-output vertex and extract its parity pattern.

    Accepts iff (a) every entry is exactly 0 or 1/2, (b) each context has
    exactly two 1/2-entries sharing a fixed output parity a^b, and (c) all
    single-party marginals equal 1/2.  Raises :class:`VertexRejection`
    carrying the first violated condition otherwise.
    """
    scenario = table.scenario
    for x, y in scenario.input_pairs():
        for a in (0, 1):
            for b in (0, 1):
                p = table.entries[x][y][a][b]
                if p != 0 and p != HALF:
                    raise VertexRejection(
                        "entries",
                        f"P({a},{b}|{x},{y}) = {p} is not in {{0, 1/2}}",
                    )

    h_rows: list[list[int]] = []
    for x in range(scenario.m):
        row: list[int] = []
        for y in range(scenario.n):
            support = [
                (a, b)
                for a in (0, 1)
                for b in (0, 1)
                if table.entries[x][y][a][b] == HALF
            ]
            parities = {a ^ b for a, b in support}
            if len(support) != 2 or len(parities) != 1:
                raise VertexRejection(
                    "parity",
                    f"context ({x},{y}) lacks two 1/2-entries of fixed parity",
                )
            row.append(parities.pop())
        h_rows.append(row)

    for x, y in scenario.input_pairs():
        for a in (0, 1):
            if table.alice_marginal(a, x, y) != HALF:
                raise VertexRejection(
                    "marginals", f"Alice marginal P({a}|{x},{y}) differs from 1/2"
                )
        for b in (0, 1):
            if table.bob_marginal(b, x, y) != HALF:
                raise VertexRejection(
                    "marginals", f"Bob marginal P({b}|{x},{y}) differs from 1/2"
                )

    return VertexStructure(scenario, tuple(tuple(row) for row in h_rows))


def otp_model_from_vertex(vs: VertexStructure) -> OtpBoxSpec:
    """The box reproducing a full-output vertex: g = 0, f = h, uniform key.

    Evaluating the returned spec reproduces the source table exactly.
    """
    return OtpBoxSpec(
        vs.scenario,
        tuple(0 for _ in range(vs.scenario.m)),
        vs.h,
        KeyDist.uniform(),
    )


def notp_model_from_isotropic(q: RationalLike) -> NOtpBoxSpec:
    """Noisy-key model of the isotropic mixture q*PR + (1-q)*anti-PR.

    Keys p(k1,k2) = (1/2)(q*[k1=k2] + (1-q)*[k1!=k2]) with g = 0 and
    f(x,y) = x*y; evaluating it reproduces the mixture exactly.
    """
    q = as_fraction(q)
    if not 0 <= q <= ONE:
        raise DomainError(f"q = {q} is outside [0, 1]")
    return NOtpBoxSpec(
        Scenario(2, 2),
        (0, 0),
        ((0, 0), (0, 1)),
        JointKeyDist.correlated(q),
    )
