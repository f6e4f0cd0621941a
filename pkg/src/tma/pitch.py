"""Pitch-class arithmetic: normal forms, interval vectors, directed intervals.

Pitch classes are plain integers 0..11 (0 = C). A chord is an immutable set
of distinct pitch classes stored in normal form, optionally carrying the raw
MIDI pitches it was extracted from.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

MODULUS = 12


def _check_pc(value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < MODULUS:
        raise ValueError(f"pitch class must be an integer in 0..11, got {value!r}")
    return value


def normal_form(pcs: Iterable[int]) -> tuple[int, ...]:
    """Return the most compact rotation of the ascending circular ordering.

    Among rotations of the sorted pitch classes, pick the one with the
    smallest span (first to last, mod 12). Span ties are broken by packing
    smaller intervals toward the left (lexicographic comparison of the
    interval sequence measured from the first element); any remaining tie
    goes to the smallest first pitch class.

    >>> normal_form({0, 5, 9})
    (5, 9, 0)
    >>> normal_form({0, 4, 7})
    (0, 4, 7)
    >>> normal_form(set())
    ()
    """
    values = sorted({_check_pc(v) for v in pcs})
    n = len(values)
    if n <= 1:
        return tuple(values)
    best_key = None
    best_rot = ()
    for i in range(n):
        rot = values[i:] + [v + MODULUS for v in values[:i]]
        first = rot[0]
        key = (rot[-1] - first, tuple(v - first for v in rot[1:]), first)
        if best_key is None or key < best_key:
            best_key = key
            best_rot = tuple(v % MODULUS for v in rot)
    return best_rot


@dataclass(frozen=True)
class Chord:
    """A set of distinct pitch classes held in normal form.

    ``raw_pitches`` preserves the source MIDI pitches (with multiplicity and
    octave) when the chord came from a score; it is empty for abstract
    chords. Every raw pitch must reduce mod 12 to one of the pitch classes.
    """

    normal_form: tuple[int, ...]
    raw_pitches: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        canonical = normal_form(self.normal_form)
        if canonical != tuple(self.normal_form):
            raise ValueError(
                f"{self.normal_form!r} is not in normal form (expected {canonical!r})"
            )
        if self.raw_pitches:
            pcs = set(self.normal_form)
            object.__setattr__(self, "raw_pitches", tuple(sorted(self.raw_pitches)))
            stray = {p for p in self.raw_pitches if p % MODULUS not in pcs}
            if stray:
                raise ValueError(f"raw pitches {sorted(stray)} not covered by {pcs}")

    @classmethod
    def from_pcs(cls, pcs: Iterable[int]) -> "Chord":
        return cls(normal_form(pcs))

    @classmethod
    def from_pitches(cls, pitches: Iterable[int]) -> "Chord":
        ps = tuple(sorted(int(p) for p in pitches))
        return cls(normal_form({p % MODULUS for p in ps}), ps)

    @property
    def pcs(self) -> frozenset[int]:
        return frozenset(self.normal_form)

    def __len__(self) -> int:
        return len(self.normal_form)


def interval_vector(chord: Chord) -> tuple[int, int, int, int, int, int]:
    """Count unordered pitch-class pairs per interval class 1..6.

    >>> interval_vector(Chord.from_pcs({0, 5, 9}))
    (0, 0, 1, 1, 1, 0)
    """
    counts = [0] * 6
    for a, b in combinations(chord.normal_form, 2):
        diff = (a - b) % MODULUS
        ic = min(diff, MODULUS - diff)
        counts[ic - 1] += 1
    return tuple(counts)


def transpose(chord: Chord, t: int) -> Chord:
    """Shift every pitch class by ``t`` mod 12 and re-normalize.

    Raw pitches, when present, are shifted by ``t`` semitones so octave
    information stays aligned with the new pitch classes.
    """
    pcs = {(v + t) % MODULUS for v in chord.normal_form}
    raw = tuple(p + t for p in chord.raw_pitches)
    return Chord(normal_form(pcs), raw)


def directed_interval(a: int, b: int) -> int:
    """Upward interval from ``a`` to ``b``: (b - a) mod 12, in 0..11.

    >>> directed_interval(5, 9)
    4
    >>> directed_interval(9, 0)
    3
    """
    return (_check_pc(b) - _check_pc(a)) % MODULUS
