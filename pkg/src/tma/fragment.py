"""Vertical events, music fragments, chordification and the fragment JSON format.

All times are exact rationals measured in quarter notes. Decimal values only
appear when data leaves the package (CSV, point clouds), never internally.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SchemaViolation
from .pitch import Chord, normal_form


@dataclass(frozen=True)
class Note:
    """One note as read from a score: MIDI pitch plus exact onset/duration.

    ``grace`` marks an ornament that should not generate its own event
    boundaries; its pitch class is merged into the chord of the event it
    precedes.
    """

    pitch: int
    onset: Fraction
    duration: Fraction
    grace: bool = False


@dataclass(frozen=True)
class VerticalEvent:
    """A maximal time span over which the set of sounding notes is constant."""

    chord: Chord
    duration: Fraction
    onset: Fraction
    index: int

    def __post_init__(self) -> None:
        if self.duration <= 0:
            raise ValueError(f"event duration must be positive, got {self.duration}")
        if self.onset < 0:
            raise ValueError(f"event onset must be nonnegative, got {self.onset}")


@dataclass(frozen=True)
class MusicFragment:
    """An ordered, indexed sequence of vertical events."""

    events: tuple[VerticalEvent, ...]
    source_label: str = ""

    def __post_init__(self) -> None:
        previous = None
        for i, event in enumerate(self.events):
            if event.index != i:
                raise ValueError(f"event {i} carries index {event.index}")
            if previous is not None and event.onset <= previous:
                raise ValueError(f"event {i} onset {event.onset} not after {previous}")
            previous = event.onset

    def __len__(self) -> int:
        return len(self.events)

    def chords(self) -> list[Chord]:
        return [e.chord for e in self.events]


def chordify(notes: Iterable[Note], source_label: str = "") -> MusicFragment:
    """Segment a bag of notes into vertical events.

    Event boundaries are exactly the distinct onsets and offsets of the
    non-grace notes; each event's chord is the pitch-class set of everything
    sounding on [boundary_k, boundary_{k+1}). Spans where nothing sounds
    produce no event, so a sustained note reappears in later events until its
    written duration is used up. An empty note list gives an empty fragment.
    """
    notes = list(notes)
    for n in notes:
        if n.duration <= 0:
            raise ValueError(f"note duration must be positive: {n}")
        if n.onset < 0:
            raise ValueError(f"note onset must be nonnegative: {n}")
    sounding = [n for n in notes if not n.grace]
    graces = [n for n in notes if n.grace]

    boundaries = sorted({n.onset for n in sounding} | {n.onset + n.duration for n in sounding})
    raw_events: list[tuple[Fraction, Fraction, list[int]]] = []
    for start, stop in zip(boundaries, boundaries[1:]):
        pitches = [n.pitch for n in sounding if n.onset <= start < n.onset + n.duration]
        if pitches:
            raw_events.append((start, stop - start, pitches))

    for g in graces:
        target = next((ev for ev in raw_events if ev[0] >= g.onset), None)
        if target is None and raw_events:
            target = raw_events[-1]
        if target is None:
            warnings.warn(f"grace note {g} dropped: no event to attach it to")
            continue
        target[2].append(g.pitch)

    events = tuple(
        VerticalEvent(Chord.from_pitches(pitches), duration, onset, i)
        for i, (onset, duration, pitches) in enumerate(raw_events)
    )
    return MusicFragment(events, source_label)


# --- fragment JSON -----------------------------------------------------------
#
# { "label": str,
#   "events": [ { "pcs": [int, ...], "pitches": [int, ...]?,
#                 "duration": [num, den], "onset": [num, den] }, ... ] }
#
# Rationals are encoded as two-integer arrays. A companion "notes" document
# ({"label": str, "notes": [{"pitch", "onset", "duration", "grace"?}]}) is
# accepted by parse_notes_json and chordified on load; it is the only JSON
# form that can carry per-note grace flags.


def _rational(obj: object, pointer: str, allow_zero: bool = False) -> Fraction:
    if (
        not isinstance(obj, list)
        or len(obj) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj)
    ):
        raise SchemaViolation("expected [numerator, denominator] integers", pointer)
    num, den = obj
    if den <= 0:
        raise SchemaViolation(f"denominator must be positive, got {den}", pointer)
    if num < 0 or (num == 0 and not allow_zero):
        raise SchemaViolation(f"value must be {'nonnegative' if allow_zero else 'positive'}", pointer)
    return Fraction(num, den)


def _event_from_obj(obj: object, pointer: str, index: int) -> VerticalEvent:
    if not isinstance(obj, dict):
        raise SchemaViolation("event must be an object", pointer)
    unknown = set(obj) - {"pcs", "pitches", "duration", "onset"}
    if unknown:
        raise SchemaViolation(f"unknown keys {sorted(unknown)}", pointer)
    for key in ("pcs", "duration", "onset"):
        if key not in obj:
            raise SchemaViolation(f"missing key {key!r}", pointer)
    pcs = obj["pcs"]
    if not isinstance(pcs, list) or not pcs:
        raise SchemaViolation("pcs must be a nonempty array", f"{pointer}/pcs")
    for k, v in enumerate(pcs):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v <= 11:
            raise SchemaViolation("pitch class must be an integer 0..11", f"{pointer}/pcs/{k}")
    if len(set(pcs)) != len(pcs):
        raise SchemaViolation("pitch classes must be distinct", f"{pointer}/pcs")
    pitches = obj.get("pitches", [])
    if not isinstance(pitches, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in pitches
    ):
        raise SchemaViolation("pitches must be an array of integers", f"{pointer}/pitches")
    duration = _rational(obj["duration"], f"{pointer}/duration")
    onset = _rational(obj["onset"], f"{pointer}/onset", allow_zero=True)
    try:
        chord = Chord(normal_form(pcs), tuple(pitches))
    except ValueError as exc:
        raise SchemaViolation(str(exc), pointer) from exc
    return VerticalEvent(chord, duration, onset, index)


def parse_fragment_json(data: bytes | str) -> MusicFragment:
    """Parse the fragment JSON format; raises SchemaViolation with a pointer."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON: {exc}", "") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation("document must be an object", "")
    if "events" not in doc:
        raise SchemaViolation("missing key 'events'", "")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SchemaViolation("label must be a string", "/label")
    events_obj = doc["events"]
    if not isinstance(events_obj, list):
        raise SchemaViolation("events must be an array", "/events")
    events = []
    previous = None
    for i, obj in enumerate(events_obj):
        event = _event_from_obj(obj, f"/events/{i}", i)
        if previous is not None and event.onset <= previous:
            raise SchemaViolation("onsets must be strictly increasing", f"/events/{i}/onset")
        previous = event.onset
        events.append(event)
    return MusicFragment(tuple(events), label)


def serialize_fragment_json(fragment: MusicFragment) -> str:
    """Serialize losslessly; parse_fragment_json inverts this exactly."""
    doc = {
        "label": fragment.source_label,
        "events": [
            {
                "pcs": list(e.chord.normal_form),
                **({"pitches": list(e.chord.raw_pitches)} if e.chord.raw_pitches else {}),
                "duration": [e.duration.numerator, e.duration.denominator],
                "onset": [e.onset.numerator, e.onset.denominator],
            }
            for e in fragment.events
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_notes_json(data: bytes | str) -> MusicFragment:
    """Parse a note-level document and chordify it into a fragment."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON: {exc}", "") from exc
    if not isinstance(doc, dict) or "notes" not in doc:
        raise SchemaViolation("document must be an object with a 'notes' array", "")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SchemaViolation("label must be a string", "/label")
    notes_obj = doc["notes"]
    if not isinstance(notes_obj, list):
        raise SchemaViolation("notes must be an array", "/notes")
    notes = []
    for i, obj in enumerate(notes_obj):
        pointer = f"/notes/{i}"
        if not isinstance(obj, dict):
            raise SchemaViolation("note must be an object", pointer)
        unknown = set(obj) - {"pitch", "onset", "duration", "grace"}
        if unknown:
            raise SchemaViolation(f"unknown keys {sorted(unknown)}", pointer)
        pitch = obj.get("pitch")
        if not isinstance(pitch, int) or isinstance(pitch, bool):
            raise SchemaViolation("pitch must be an integer", f"{pointer}/pitch")
        grace = obj.get("grace", False)
        if not isinstance(grace, bool):
            raise SchemaViolation("grace must be a boolean", f"{pointer}/grace")
        onset = _rational(obj.get("onset"), f"{pointer}/onset", allow_zero=True)
        duration = _rational(obj.get("duration"), f"{pointer}/duration")
        notes.append(Note(pitch, onset, duration, grace))
    return chordify(notes, label)


def events_to_notes(fragment: MusicFragment) -> list[Note]:
    """Render events back to notes, one per pitch class per event."""
    notes = []
    for event in fragment.events:
        pitches: Sequence[int] = event.chord.raw_pitches or [
            60 + pc for pc in event.chord.normal_form
        ]
        notes.extend(Note(p, event.onset, event.duration) for p in pitches)
    return notes
