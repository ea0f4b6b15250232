"""Two-party protocols with explicit classical-channel accounting.

Three layers:

* the XOR one-time-pad primitive on bit-strings and its additive
  homomorphism (XOR-ing two ciphertexts yields the XOR of the plaintexts
  under the XOR of the keys);
* the Van Dam protocol: Bob computes an arbitrary distributed binary
  function f(x,y) from a pool of 2^n PR boxes and a single classical bit
  from Alice, because the per-box pads cancel homomorphically;
* the pool simulation of an arbitrary uniform-key box by PR boxes with no
  classical communication at all.

PR boxes inside protocols are realized at the hidden-variable level: each
instance draws a fresh uniform key bit when Alice uses it, outputs the key
on her port and the encrypted input product on Bob's.  The temporal order
(Alice first, then Bob) is part of the contract and is enforced, as is
one-time use of every instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .boxes import CorrelationTable, OtpBoxSpec
from .errors import (
    ConstructionError,
    DomainError,
    PreconditionError,
    ProtocolError,
    ResourceLimitError,
)

Bits = tuple[int, ...]
BitsLike = Union[str, Sequence[int]]

ALICE_TO_BOB = "alice->bob"
BOB_TO_ALICE = "bob->alice"

# Exhaustive modes enumerate 2^(m+n) input pairs and a single run already
# allocates a 2^n pool; past this many total input bits the run stops being
# a desk-scale computation.
MAX_TOTAL_INPUT_BITS = 20


def parse_bits(value: BitsLike) -> Bits:
    """Normalize a bit-string given as '1011' or as a sequence of 0/1."""
    if isinstance(value, str):
        items: Iterable = value
    else:
        items = value
    out = []
    for item in items:
        bit = int(item) if isinstance(item, (str, bool)) else item
        if bit not in (0, 1):
            raise DomainError(f"{value!r} is not a bit-string")
        out.append(bit)
    return tuple(out)


def format_bits(bits: Bits) -> str:
    return "".join(str(b) for b in bits)


def bits_to_int(bits: Bits) -> int:
    """Big-endian decimal value: leftmost bit is most significant."""
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def int_to_bits(value: int, width: int) -> Bits:
    """Big-endian bit-string of the given width."""
    if not 0 <= value < (1 << width):
        raise DomainError(f"{value} does not fit in {width} bits")
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def _paired(message: BitsLike, key: BitsLike) -> tuple[Bits, Bits]:
    msg, pad = parse_bits(message), parse_bits(key)
    if len(msg) != len(pad):
        raise DomainError(
            f"length mismatch: message has {len(msg)} bits, key has {len(pad)}"
        )
    return msg, pad


def otp_encrypt(message: BitsLike, key: BitsLike) -> Bits:
    """Bitwise XOR of a message with an equal-length key."""
    msg, pad = _paired(message, key)
    return tuple(m ^ k for m, k in zip(msg, pad))


def otp_decrypt(ciphertext: BitsLike, key: BitsLike) -> Bits:
    """Inverse of :func:`otp_encrypt` (XOR is an involution)."""
    return otp_encrypt(ciphertext, key)


def xor_homomorphism_check(
    m1: BitsLike, m2: BitsLike, k1: BitsLike, k2: BitsLike
) -> bool:
    """Does decrypting XOR-ed ciphertexts under the XOR-ed key recover m1^m2?

    Holds identically for the XOR pad; returning the check rather than True
    keeps it usable as an executable property.
    """
    c1 = otp_encrypt(m1, k1)
    c2 = otp_encrypt(m2, k2)
    combined_key = otp_encrypt(k1, k2)
    expected = otp_encrypt(m1, m2)
    return otp_decrypt(otp_encrypt(c1, c2), combined_key) == expected


@dataclass(frozen=True)
class DistributedFunction:
    """Binary function f: {0,1}^m x {0,1}^n -> {0,1} as a full truth table.

    ``table`` is row-major over (x, y): entry ``x_dec * 2^n + y_dec`` holds
    f(x, y), with bit-strings read big-endian.
    """

    m: int
    n: int
    table: Bits

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ConstructionError("string lengths m, n must be >= 1")
        table = tuple(self.table)
        if len(table) != 1 << (self.m + self.n):
            raise ConstructionError(
                f"truth table needs {1 << (self.m + self.n)} entries, got {len(table)}"
            )
        if any(v not in (0, 1) for v in table):
            raise ConstructionError("truth table entries must be bits")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_callable(
        cls, m: int, n: int, fn: Callable[[Bits, Bits], int]
    ) -> "DistributedFunction":
        table = tuple(
            fn(int_to_bits(xd, m), int_to_bits(yd, n))
            for xd in range(1 << m)
            for yd in range(1 << n)
        )
        return cls(m, n, table)

    @classmethod
    def and_function(cls) -> "DistributedFunction":
        return cls.from_callable(1, 1, lambda x, y: x[0] & y[0])

    @classmethod
    def inner_product(cls, k: int) -> "DistributedFunction":
        """IP_k(x, y) = XOR_i x_i * y_i."""

        def ip(x: Bits, y: Bits) -> int:
            acc = 0
            for xi, yi in zip(x, y):
                acc ^= xi & yi
            return acc

        return cls.from_callable(k, k, ip)

    @classmethod
    def constant(cls, m: int, n: int, bit: int) -> "DistributedFunction":
        return cls.from_callable(m, n, lambda x, y: bit)

    @classmethod
    def random(cls, m: int, n: int, seed: int) -> "DistributedFunction":
        rng = random.Random(seed)
        return cls(m, n, tuple(rng.getrandbits(1) for _ in range(1 << (m + n))))

    @classmethod
    def named(cls, name: str, m: int | None = None, n: int | None = None) -> "DistributedFunction":
        """Resolve 'AND', 'IP2', 'IP3', or 'RANDOM:seed' (needs m and n)."""
        if name == "AND":
            return cls.and_function()
        if name.startswith("IP") and name[2:].isdigit():
            return cls.inner_product(int(name[2:]))
        if name.startswith("RANDOM:"):
            if m is None or n is None:
                raise DomainError("RANDOM:seed functions need explicit m and n")
            return cls.random(m, n, int(name.split(":", 1)[1]))
        raise DomainError(f"unknown function name {name!r}")

    def value(self, x: BitsLike, y: BitsLike) -> int:
        xb, yb = parse_bits(x), parse_bits(y)
        if len(xb) != self.m or len(yb) != self.n:
            raise DomainError(
                f"expected {self.m}+{self.n} input bits, got {len(xb)}+{len(yb)}"
            )
        return self.table[(bits_to_int(xb) << self.n) | bits_to_int(yb)]

    def to_hex(self) -> str:
        """Truth table packed row-major, MSB-first, zero-padded to whole hex digits."""
        digits = []
        for start in range(0, len(self.table), 4):
            chunk = self.table[start : start + 4]
            nibble = 0
            for i in range(4):
                bit = chunk[i] if i < len(chunk) else 0
                nibble = (nibble << 1) | bit
            digits.append(format(nibble, "x"))
        return "".join(digits)

    @classmethod
    def from_hex(cls, m: int, n: int, hex_string: str) -> "DistributedFunction":
        size = 1 << (m + n)
        expected_digits = (size + 3) // 4
        text = hex_string.strip().lower()
        if len(text) != expected_digits:
            raise ConstructionError(
                f"hex truth table for m={m}, n={n} needs {expected_digits} digits, "
                f"got {len(text)}"
            )
        bits: list[int] = []
        for ch in text:
            try:
                nibble = int(ch, 16)
            except ValueError as exc:
                raise ConstructionError(f"invalid hex digit {ch!r}") from exc
            bits.extend((nibble >> shift) & 1 for shift in (3, 2, 1, 0))
        table, padding = bits[:size], bits[size:]
        if any(padding):
            raise ConstructionError("hex truth table has nonzero padding bits")
        return cls(m, n, tuple(table))


class PrBoxInstance:
    """One PR box realized as a one-time-pad hidden-variable system.

    The key bit is drawn when Alice uses her port; her output is the key,
    and Bob's output is the input product encrypted by it.  Bob's port
    cannot fire before Alice's (his output needs her input), and each port
    fires at most once.
    """

    __slots__ = ("index", "key", "alice_input", "alice_output", "bob_input", "bob_output")

    def __init__(self, index: int):
        self.index = index
        self.key: int | None = None
        self.alice_input: int | None = None
        self.alice_output: int | None = None
        self.bob_input: int | None = None
        self.bob_output: int | None = None

    def alice(self, u: int, rng: random.Random) -> int:
        if u not in (0, 1):
            raise DomainError(f"Alice's box input {u!r} is not a bit")
        if self.alice_input is not None:
            raise ProtocolError(f"PR instance {self.index} already used by Alice")
        self.key = rng.getrandbits(1)
        self.alice_input = u
        self.alice_output = self.key
        return self.alice_output

    def bob(self, v: int) -> int:
        if v not in (0, 1):
            raise DomainError(f"Bob's box input {v!r} is not a bit")
        if self.alice_input is None:
            raise ProtocolError(
                f"PR instance {self.index}: Bob's port fired before Alice's"
            )
        if self.bob_input is not None:
            raise ProtocolError(f"PR instance {self.index} already used by Bob")
        self.bob_input = v
        self.bob_output = (self.alice_input & v) ^ self.key
        return self.bob_output


class PrBoxPool:
    """A batch of independent single-use PR instances sharing one seed-state."""

    def __init__(self, count: int, rng: random.Random):
        if count < 1:
            raise DomainError("pool needs at least one instance")
        self._rng = rng
        self.instances = [PrBoxInstance(i) for i in range(count)]

    def __len__(self) -> int:
        return len(self.instances)

    def alice(self, index: int, u: int) -> int:
        return self.instances[index].alice(u, self._rng)

    def bob(self, index: int, v: int) -> int:
        return self.instances[index].bob(v)


@dataclass(frozen=True)
class BoxEvent:
    instance: int
    alice_input: int
    alice_output: int
    bob_input: int
    bob_output: int


@dataclass(frozen=True)
class Message:
    direction: str
    bit: int


@dataclass(frozen=True)
class ProtocolTranscript:
    """Complete record of one protocol run.

    The bit counters are redundant with the message list and are checked
    against it on construction.
    """

    box_events: tuple[BoxEvent, ...]
    messages: tuple[Message, ...]
    bits_alice_to_bob: int
    bits_bob_to_alice: int
    result: int

    def __post_init__(self):
        sent_ab = sum(1 for msg in self.messages if msg.direction == ALICE_TO_BOB)
        sent_ba = sum(1 for msg in self.messages if msg.direction == BOB_TO_ALICE)
        if (sent_ab, sent_ba) != (self.bits_alice_to_bob, self.bits_bob_to_alice):
            raise ConstructionError("bit counters disagree with the message list")
        seen: set[int] = set()
        for event in self.box_events:
            if event.instance in seen:
                raise ProtocolError(
                    f"transcript reuses PR instance {event.instance}"
                )
            seen.add(event.instance)


def vandam_run(
    df: DistributedFunction, x: BitsLike, y: BitsLike, rng: random.Random
) -> ProtocolTranscript:
    """One run of the distributed computation of f(x,y) with one classical bit.

    A pool of 2^n PR instances is indexed by Bob's possible strings.  Alice
    feeds f(x, y_i) into instance i for every candidate y_i; Bob feeds 1
    into the instance matching his actual string (big-endian decimal index)
    and 0 elsewhere.  XOR-ing his outputs leaves f(x,y) encrypted under the
    XOR of all pool keys, which is exactly the one bit Alice sends: the
    per-instance pads cancel homomorphically and the result is always
    correct despite every key being random.
    """
    xb, yb = parse_bits(x), parse_bits(y)
    if len(xb) != df.m or len(yb) != df.n:
        raise DomainError(
            f"expected {df.m}+{df.n} input bits, got {len(xb)}+{len(yb)}"
        )
    if df.m + df.n > MAX_TOTAL_INPUT_BITS:
        raise ResourceLimitError(
            f"m+n = {df.m + df.n} exceeds the {MAX_TOTAL_INPUT_BITS}-bit guard"
        )

    pool = PrBoxPool(1 << df.n, rng)
    y_dec = bits_to_int(yb)

    events = []
    alice_key = 0  # XOR of Alice's outputs: the combined pad
    bob_acc = 0  # XOR of Bob's encrypted outputs
    for i in range(len(pool)):
        y_i = int_to_bits(i, df.n)
        u = df.value(xb, y_i)
        a_i = pool.alice(i, u)
        v = 1 if i == y_dec else 0
        b_i = pool.bob(i, v)
        events.append(BoxEvent(i, u, a_i, v, b_i))
        alice_key ^= a_i
        bob_acc ^= b_i

    messages = (Message(ALICE_TO_BOB, alice_key),)
    return ProtocolTranscript(tuple(events), messages, 1, 0, bob_acc ^ alice_key)


@dataclass(frozen=True)
class VandamReport:
    total_cases: int
    correct_cases: int
    pool_size: int
    max_bits_alice_to_bob: int
    max_bits_bob_to_alice: int

    @property
    def all_correct(self) -> bool:
        return self.correct_cases == self.total_cases


def vandam_exhaustive(
    df: DistributedFunction,
    rng: random.Random,
    on_transcript: Callable[[Bits, Bits, ProtocolTranscript], None] | None = None,
) -> VandamReport:
    """Run the protocol over all 2^(m+n) input pairs and tally correctness.

    ``on_transcript`` receives every run's inputs and transcript (for audit
    logging) before the next run starts.
    """
    if df.m + df.n > MAX_TOTAL_INPUT_BITS:
        raise ResourceLimitError(
            f"m+n = {df.m + df.n} exceeds the {MAX_TOTAL_INPUT_BITS}-bit guard"
        )
    total = 0
    correct = 0
    max_ab = 0
    max_ba = 0
    for xd in range(1 << df.m):
        xb = int_to_bits(xd, df.m)
        for yd in range(1 << df.n):
            yb = int_to_bits(yd, df.n)
            transcript = vandam_run(df, xb, yb, rng)
            if on_transcript is not None:
                on_transcript(xb, yb, transcript)
            total += 1
            if transcript.result == df.value(xb, yb):
                correct += 1
            max_ab = max(max_ab, transcript.bits_alice_to_bob)
            max_ba = max(max_ba, transcript.bits_bob_to_alice)
    return VandamReport(total, correct, 1 << df.n, max_ab, max_ba)


@dataclass(frozen=True)
class OtpSimulationResult:
    """Outcome of simulating a uniform-key box by a PR pool.

    ``exact`` is the distribution induced by the pool protocol, derived by
    enumerating every pool key assignment; ``empirical`` holds observed
    frequencies over ``trials_per_cell`` runs per input pair (None when no
    trials were requested).  Empirical entries are exact counts over trials,
    so the result is itself a valid correlation table.
    """

    exact: CorrelationTable
    empirical: CorrelationTable | None
    trials_per_cell: int


def _pool_protocol_outputs(
    spec: OtpBoxSpec, x: int, y: int, keys: Sequence[int]
) -> tuple[int, int]:
    """Outputs of one pool run at the hidden-variable level.

    Instance i (one per Bob input setting) gets f(x, i) from Alice and the
    indicator [i == y] from Bob; Alice reports g(x) XOR-ed with all her
    outputs, Bob the XOR of his.  No message is exchanged.
    """
    a_acc = spec.g[x]
    b_acc = 0
    for i in range(spec.scenario.n):
        key = keys[i]
        u = spec.f[x][i]
        v = 1 if i == y else 0
        a_acc ^= key  # Alice's port outputs the instance key
        b_acc ^= (u & v) ^ key
    return a_acc, b_acc


def simulate_otp_via_pr(
    spec: OtpBoxSpec, trials: int = 0, rng: random.Random | None = None
) -> OtpSimulationResult:
    """Simulate a uniform-key box with one PR instance per Bob setting.

    Returns the exactly induced table (by enumeration over the 2^n pool key
    assignments, each of weight 1/2^n) together with an empirical table
    over the requested number of runs per input pair.  Only uniform-key
    specs are accepted: a biased key would make the target signaling, which
    no pool of PR boxes can reproduce.
    """
    if not spec.key.is_uniform:
        raise PreconditionError("pool simulation requires a uniform key")
    n = spec.scenario.n
    if n > MAX_TOTAL_INPUT_BITS:
        raise ResourceLimitError(
            f"n = {n} exceeds the {MAX_TOTAL_INPUT_BITS}-bit enumeration guard"
        )
    if trials and rng is None:
        raise DomainError("empirical trials need a seeded random generator")

    weight = Fraction(1, 1 << n)
    exact_counts: dict[tuple[int, int, int, int], Fraction] = {}
    for x, y in spec.scenario.input_pairs():
        for mask in range(1 << n):
            keys = [(mask >> i) & 1 for i in range(n)]
            a, b = _pool_protocol_outputs(spec, x, y, keys)
            cell = (x, y, a, b)
            exact_counts[cell] = exact_counts.get(cell, Fraction(0)) + weight
    exact = CorrelationTable.from_function(
        spec.scenario.m,
        spec.scenario.n,
        lambda a, b, x, y: exact_counts.get((x, y, a, b), Fraction(0)),
    )

    empirical = None
    if trials:
        counts: dict[tuple[int, int, int, int], int] = {}
        for x, y in spec.scenario.input_pairs():
            for _ in range(trials):
                mask = rng.getrandbits(n)
                keys = [(mask >> i) & 1 for i in range(n)]
                a, b = _pool_protocol_outputs(spec, x, y, keys)
                cell = (x, y, a, b)
                counts[cell] = counts.get(cell, 0) + 1
        empirical = CorrelationTable.from_function(
            spec.scenario.m,
            spec.scenario.n,
            lambda a, b, x, y: Fraction(counts.get((x, y, a, b), 0), trials),
        )

    return OtpSimulationResult(exact, empirical, trials)
