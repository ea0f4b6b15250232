"""JSON wire formats: rational strings, tables, box specs, transcripts.

Conventions, fixed so round-trips are byte-stable:

* rationals appear as strings ``"num/den"`` in canonical lowest terms with
  a positive denominator (``"0/1"``, ``"1/2"``, ``"3/5"``);
* correlation tables are objects ``{"m", "n", "entries"}`` whose entries
  are keyed ``"a,b|x,y"`` with decimal integer indices;
* box specs are objects ``{"m", "n", "g", "f", "key"}`` (single key bit) or
  ``{"m", "n", "g", "f", "keys"}`` (joint keys, keyed ``"k1,k2"``);
* canonical JSON is dumped with sorted keys, compact separators, and a
  trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .boxes import (
    CorrelationTable,
    JointKeyDist,
    KeyDist,
    NOtpBoxSpec,
    OtpBoxSpec,
    Scenario,
)
from .errors import ConstructionError, DomainError
from .protocols import DistributedFunction, ProtocolTranscript


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse 'num/den', integer, or exact decimal strings."""
    if not isinstance(text, str):
        raise ConstructionError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConstructionError(f"cannot parse rational {text!r}: {exc}") from exc


def dumps_canonical(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, compact separators, newline."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def table_to_dict(table: CorrelationTable) -> dict:
    entries = {}
    for x, y in table.scenario.input_pairs():
        for a in (0, 1):
            for b in (0, 1):
                entries[f"{a},{b}|{x},{y}"] = format_rational(table.entries[x][y][a][b])
    return {"m": table.scenario.m, "n": table.scenario.n, "entries": entries}


def table_from_dict(payload: dict) -> CorrelationTable:
    try:
        scenario = Scenario(payload["m"], payload["n"])
        entries = payload["entries"]
    except (KeyError, TypeError) as exc:
        raise ConstructionError(f"malformed table document: {exc}") from exc
    if not isinstance(entries, dict):
        raise ConstructionError("table 'entries' must be an object")

    def entry(a: int, b: int, x: int, y: int) -> Fraction:
        key = f"{a},{b}|{x},{y}"
        if key not in entries:
            raise ConstructionError(f"table document is missing entry {key!r}")
        return parse_rational(entries[key])

    table = CorrelationTable.from_function(scenario.m, scenario.n, entry)
    expected = 4 * scenario.m * scenario.n
    if len(entries) != expected:
        raise ConstructionError(
            f"table document has {len(entries)} entries, expected {expected}"
        )
    return table


def spec_to_dict(spec: OtpBoxSpec | NOtpBoxSpec) -> dict:
    payload = {
        "m": spec.scenario.m,
        "n": spec.scenario.n,
        "g": list(spec.g),
        "f": [list(row) for row in spec.f],
    }
    if isinstance(spec, OtpBoxSpec):
        payload["key"] = format_rational(spec.key.p0)
    else:
        payload["keys"] = {
            f"{k1},{k2}": format_rational(spec.keys.prob(k1, k2))
            for k1 in (0, 1)
            for k2 in (0, 1)
        }
    return payload


def spec_from_dict(payload: dict) -> OtpBoxSpec | NOtpBoxSpec:
    """Load a box spec; the 'key'/'keys' field decides the variant."""
    if not isinstance(payload, dict):
        raise ConstructionError("box spec document must be an object")
    try:
        scenario = Scenario(payload["m"], payload["n"])
        g = payload["g"]
        f = payload["f"]
    except (KeyError, TypeError) as exc:
        raise ConstructionError(f"malformed box spec document: {exc}") from exc
    if "key" in payload and "keys" in payload:
        raise ConstructionError("box spec cannot carry both 'key' and 'keys'")
    if "key" in payload:
        return OtpBoxSpec(scenario, g, f, KeyDist(parse_rational(payload["key"])))
    if "keys" in payload:
        keys = payload["keys"]
        if not isinstance(keys, dict):
            raise ConstructionError("'keys' must be an object keyed 'k1,k2'")
        try:
            table = tuple(
                tuple(parse_rational(keys[f"{k1},{k2}"]) for k2 in (0, 1))
                for k1 in (0, 1)
            )
        except KeyError as exc:
            raise ConstructionError(f"joint keys are missing entry {exc}") from exc
        return NOtpBoxSpec(scenario, g, f, JointKeyDist(table))
    raise ConstructionError("box spec needs a 'key' or 'keys' field")


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ConstructionError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConstructionError(f"{path} is not valid JSON: {exc}") from exc


def load_table(path: str) -> CorrelationTable:
    return table_from_dict(load_json(path))


def save_table(table: CorrelationTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_canonical(table_to_dict(table)))


def load_spec(path: str) -> OtpBoxSpec | NOtpBoxSpec:
    return spec_from_dict(load_json(path))


def save_spec(spec: OtpBoxSpec | NOtpBoxSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_canonical(spec_to_dict(spec)))


def transcript_events(transcript: ProtocolTranscript) -> list[dict]:
    """Transcript as a list of JSON-ready event objects, in temporal order."""
    events: list[dict] = []
    for ev in transcript.box_events:
        events.append(
            {
                "event": "box",
                "instance": ev.instance,
                "alice_input": ev.alice_input,
                "alice_output": ev.alice_output,
                "bob_input": ev.bob_input,
                "bob_output": ev.bob_output,
            }
        )
    for msg in transcript.messages:
        events.append({"event": "message", "direction": msg.direction, "bit": msg.bit})
    events.append(
        {
            "event": "result",
            "bit": transcript.result,
            "bits_alice_to_bob": transcript.bits_alice_to_bob,
            "bits_bob_to_alice": transcript.bits_bob_to_alice,
        }
    )
    return events


def transcript_to_jsonl(transcript: ProtocolTranscript) -> str:
    """One canonical JSON object per line, events in temporal order."""
    return "".join(dumps_canonical(ev) for ev in transcript_events(transcript))


def load_distributed_function(path: str) -> DistributedFunction:
    """Truth-table file: first line 'm n', second line the hex-packed table."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = [line.strip() for line in handle if line.strip()]
    except OSError as exc:
        raise ConstructionError(f"cannot read {path}: {exc}") from exc
    if len(lines) != 2:
        raise ConstructionError(
            f"{path}: expected two lines ('m n' then hex digits), got {len(lines)}"
        )
    try:
        m_text, n_text = lines[0].split()
        m, n = int(m_text), int(n_text)
    except ValueError as exc:
        raise ConstructionError(f"{path}: first line must be 'm n': {exc}") from exc
    return DistributedFunction.from_hex(m, n, lines[1])


def save_distributed_function(df: DistributedFunction, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{df.m} {df.n}\n{df.to_hex()}\n")
