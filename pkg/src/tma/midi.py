"""Standard MIDI File parsing (formats 0 and 1) into music fragments.

Only note-on/note-off timing matters here: onsets and durations are kept as
exact rationals (ticks over ticks-per-quarter), tempo is irrelevant because
all times are expressed in quarter notes. Channel 10 (unpitched percussion)
is dropped before chordification.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .errors import DanglingNoteOnWarning, MalformedMidi, UnsupportedFormat
from .fragment import MusicFragment, Note, chordify

PERCUSSION_CHANNEL = 9  # zero-based wire channel for "channel 10"

_CHANNEL_MSG_LEN = {0x8: 2, 0x9: 2, 0xA: 2, 0xB: 2, 0xC: 1, 0xD: 1, 0xE: 2}


class _Reader:
    def __init__(self, data: bytes, offset: int, end: int):
        self.data = data
        self.pos = offset
        self.end = end

    def take(self, n: int) -> bytes:
        if self.pos + n > self.end:
            raise MalformedMidi(f"unexpected end of data at byte {self.pos}")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return int.from_bytes(self.take(2), "big")

    def u32(self) -> int:
        return int.from_bytes(self.take(4), "big")

    def varlen(self) -> int:
        value = 0
        for _ in range(4):
            byte = self.u8()
            value = (value << 7) | (byte & 0x7F)
            if not byte & 0x80:
                return value
        raise MalformedMidi(f"variable-length quantity too long at byte {self.pos}")


def _parse_track(data: bytes, start: int, length: int, ticks_per_quarter: int) -> list[Note]:
    reader = _Reader(data, start, start + length)
    notes: list[Note] = []
    active: dict[tuple[int, int], list[int]] = {}
    tick = 0
    running_status = None

    def close(channel: int, pitch: int, off_tick: int) -> None:
        stack = active.get((channel, pitch))
        if not stack:
            return
        on_tick = stack.pop()
        if channel == PERCUSSION_CHANNEL:
            return
        if off_tick == on_tick:
            warnings.warn(f"zero-length note pitch {pitch} at tick {on_tick} dropped")
            return
        notes.append(
            Note(
                pitch,
                Fraction(on_tick, ticks_per_quarter),
                Fraction(off_tick - on_tick, ticks_per_quarter),
            )
        )

    while reader.pos < reader.end:
        tick += reader.varlen()
        status = reader.u8()
        if status < 0x80:
            if running_status is None:
                raise MalformedMidi(f"data byte {status:#x} with no running status")
            reader.pos -= 1
            status = running_status
        if status == 0xFF:
            reader.u8()  # meta type
            reader.take(reader.varlen())
            running_status = None
            continue
        if status in (0xF0, 0xF7):
            reader.take(reader.varlen())
            running_status = None
            continue
        if status >= 0xF0:
            raise MalformedMidi(f"unexpected system message {status:#x}")
        running_status = status
        kind, channel = status >> 4, status & 0x0F
        payload = reader.take(_CHANNEL_MSG_LEN[kind])
        if kind == 0x9 and payload[1] > 0:
            active.setdefault((channel, payload[0]), []).append(tick)
        elif kind == 0x8 or (kind == 0x9 and payload[1] == 0):
            close(channel, payload[0], tick)

    for (channel, pitch), stack in sorted(active.items()):
        for _ in range(len(stack)):
            warnings.warn(
                f"note-on pitch {pitch} channel {channel + 1} never released; "
                "closing at track end",
                DanglingNoteOnWarning,
            )
            close(channel, pitch, tick)
    return notes


def read_midi_notes(data: bytes) -> list[Note]:
    """Extract pitched notes (percussion removed) from SMF bytes."""
    if len(data) < 14 or data[:4] != b"MThd":
        raise MalformedMidi("missing MThd header")
    reader = _Reader(data, 4, len(data))
    header_length = reader.u32()
    if header_length < 6:
        raise MalformedMidi(f"header length {header_length} < 6")
    smf_format = reader.u16()
    declared_tracks = reader.u16()
    division = reader.u16()
    reader.take(header_length - 6)
    if smf_format not in (0, 1):
        raise UnsupportedFormat(f"SMF format {smf_format} not supported")
    if division & 0x8000:
        raise UnsupportedFormat("SMPTE time division not supported")
    if division == 0:
        raise MalformedMidi("zero ticks-per-quarter division")
    if smf_format == 0 and declared_tracks != 1:
        raise MalformedMidi(f"format 0 file declares {declared_tracks} tracks")

    notes: list[Note] = []
    tracks_seen = 0
    while reader.pos < reader.end:
        if reader.end - reader.pos < 8:
            raise MalformedMidi(f"trailing garbage at byte {reader.pos}")
        chunk_type = reader.take(4)
        chunk_length = reader.u32()
        if chunk_type == b"MTrk":
            notes.extend(_parse_track(data, reader.pos, chunk_length, division))
            tracks_seen += 1
        # alien chunk types are skipped per the SMF spec
        reader.take(chunk_length)
    if tracks_seen != declared_tracks:
        raise MalformedMidi(f"header declares {declared_tracks} tracks, found {tracks_seen}")
    return notes


def parse_midi(data: bytes, source_label: str = "") -> MusicFragment:
    """Parse SMF bytes and chordify into a music fragment."""
    return chordify(read_midi_notes(data), source_label)
