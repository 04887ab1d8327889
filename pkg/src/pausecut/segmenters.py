"""The four segmentation strategies behind one segment vocabulary.

* fixed        -- cut every `length` seconds, content-blind, keeps everything.
* vad_merge    -- maximal speech runs become kept segments, non-speech runs
                  become dropped ones; the only strategy that discards audio.
* srpol        -- recursive bisection at the longest silence until a piece is
                  shorter than the threshold or contains no silence; needs the
                  whole recording up front.
* hybrid       -- left-to-right scan: split on the longest pause whose start
                  falls `min_len`..`max_len` after the segment start, else at
                  `max_len`.  The forced variant additionally splits at the
                  first pause of at least `juncture_ms` (a terminal-juncture
                  proxy), so segments may get arbitrarily short but never
                  exceed `max_len`.

Hybrid scan rule, precisely (this statement is the contract the reference
implementations in the test suite are written against):

  For a segment starting at s, the horizon is h = s + max_len.  A pause is
  credited only with its extent inside [s, h): its effective duration is
  (h - start) when it crosses h, else its full duration.  Pauses starting
  at or beyond h never count.  In forced mode, the earliest pause with
  start >= s, start < h and effective duration >= juncture splits at
  start + effective/2.  Otherwise, among pauses whose start offset from s
  lies in [min_len, max_len], the one with the largest effective duration
  (earliest on ties) splits at start + effective/2; if there is none and
  the audio reaches h, the split is at h.  A remainder shorter than
  max_len is emitted as the final segment.

Crediting a pause only up to the horizon is what makes every boundary
computable from the past alone: the incremental engine can reproduce this
scan split for split without waiting for a straddling pause to end.

All boundaries are plain floats produced by one arithmetic path, so
adjacent segments share the identical value and tilings are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio import frame_time
from .vad import FrameLabelTrack, Pause


@dataclass(frozen=True)
class Segment:
    """Half-open time interval [start, end) of the source audio.

    kept == False marks audio a filtering strategy discards (non-speech
    under vad_merge); every other strategy keeps the whole timeline.
    """

    start: float
    end: float
    kept: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid segment [{self.start}, {self.end})")

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class HybridParams:
    min_len: float = 17.0
    max_len: float = 20.0
    force_split: bool = False
    juncture_ms: int = 550

    def __post_init__(self) -> None:
        if not 0 < self.min_len <= self.max_len:
            raise ValueError(
                f"need 0 < min_len <= max_len, got ({self.min_len}, {self.max_len})"
            )
        if self.juncture_ms <= 0:
            raise ValueError("juncture_ms must be positive")

    @property
    def juncture(self) -> float:
        return self.juncture_ms / 1000.0


@dataclass(frozen=True)
class SrpolParams:
    max_len: float = 20.0

    def __post_init__(self) -> None:
        if self.max_len <= 0:
            raise ValueError("max_len must be positive")


def segment_fixed(total_duration: float, length: float) -> list[Segment]:
    """Tile [0, total_duration) with `length`-second segments.

    The final segment ends exactly at total_duration and may be shorter.
    Boundaries accumulate (b + length) so each segment end is the next
    segment's start by identity, and no segment outlives its bound.
    """
    if total_duration < 0:
        raise ValueError("total_duration must be >= 0")
    if length <= 0:
        raise ValueError("length must be positive")
    out = []
    b = 0.0
    while True:
        nxt = b + length
        if nxt >= total_duration:
            break
        out.append(Segment(b, nxt))
        b = nxt
    if total_duration > b:
        out.append(Segment(b, total_duration))
    return out


def segment_vad_merge(track: FrameLabelTrack) -> list[Segment]:
    """Merge consecutive same-label frames into segments.

    Speech runs are kept, non-speech runs are dropped (kept=False); the
    two together tile the full frame timeline.
    """
    labels = track.labels
    if len(labels) == 0:
        return []
    change = np.flatnonzero(labels[1:] != labels[:-1]) + 1
    starts = np.concatenate(([0], change))
    ends = np.concatenate((change, [len(labels)]))
    return [
        Segment(
            frame_time(int(a), track.frame_ms),
            frame_time(int(b), track.frame_ms),
            kept=bool(labels[a]),
        )
        for a, b in zip(starts, ends)
    ]


def segment_srpol(span: Segment, pauses: list[Pause], params: SrpolParams) -> list[Segment]:
    """Recursive longest-silence bisection of `span`.

    Stops when a piece is shorter than `max_len` or contains no pause, so
    pieces longer than max_len can survive -- exactly when they hold no
    silence at all.  Requires the complete pause inventory of the span:
    this strategy cannot run on a stream.

    The pause hosting a split is consumed: its two halves border the cut
    and are not offered to the sub-spans (splitting inside them again
    would produce degenerate slivers).
    """
    _check_sorted(pauses)
    for p in pauses:
        if p.start < span.start or p.end > span.end:
            raise ValueError(f"pause [{p.start}, {p.end}) outside span")
    return _srpol_rec(span, pauses, params.max_len)


def _srpol_rec(span: Segment, pauses: list[Pause], max_len: float) -> list[Segment]:
    if span.duration < max_len or not pauses:
        return [span]
    longest = max(pauses, key=lambda p: (p.duration, -p.start))
    mid = longest.start + longest.duration / 2
    left = [p for p in pauses if p.end <= mid]
    right = [p for p in pauses if p.start >= mid]
    return _srpol_rec(Segment(span.start, mid), left, max_len) + _srpol_rec(
        Segment(mid, span.end), right, max_len
    )


def segment_hybrid(pauses: list[Pause], total_duration: float, params: HybridParams) -> list[Segment]:
    """Pause-in-window scan (see module docstring for the exact rule)."""
    if params.force_split:
        raise ValueError("params.force_split must be False for segment_hybrid")
    _check_sorted(pauses)
    return _scan(pauses, total_duration, params, force=False)


def segment_hybrid_force(
    pauses: list[Pause], total_duration: float, params: HybridParams
) -> list[Segment]:
    """Hybrid scan with forced splits at terminal-juncture pauses."""
    if not params.force_split:
        raise ValueError("params.force_split must be True for segment_hybrid_force")
    _check_sorted(pauses)
    return _scan(pauses, total_duration, params, force=True)


def _check_sorted(pauses: list[Pause]) -> None:
    for a, b in zip(pauses, pauses[1:]):
        if b.start < a.end:
            raise ValueError("pauses must be sorted and disjoint")


def effective_duration(pause: Pause, horizon: float) -> float:
    """Extent of `pause` credited within the current scan window."""
    if pause.end >= horizon:
        return horizon - pause.start
    return pause.duration


def forced_boundary(
    pauses: list[Pause], start: float, horizon: float, juncture: float
) -> float | None:
    """Earliest juncture split in [start, horizon), or None.

    A pause qualifies if it begins inside the window and its effective
    duration reaches the juncture threshold.
    """
    for p in pauses:
        if p.start < start:
            continue
        if p.start >= horizon:
            return None
        eff = effective_duration(p, horizon)
        if eff >= juncture:
            return p.start + eff / 2
    return None


def window_boundary(
    pauses: list[Pause], start: float, horizon: float, params: HybridParams
) -> float:
    """Longest-pause split inside the min/max window, else the horizon."""
    best = None
    best_eff = 0.0
    for p in pauses:
        off = p.start - start
        if off < params.min_len:
            continue
        if off > params.max_len or p.start >= horizon:
            break
        eff = effective_duration(p, horizon)
        if eff > best_eff:
            best, best_eff = p, eff
    if best is None:
        return horizon
    return best.start + best_eff / 2


def _scan(pauses: list[Pause], total: float, params: HybridParams, force: bool) -> list[Segment]:
    out = []
    s = 0.0
    while True:
        horizon = s + params.max_len
        b = forced_boundary(pauses, s, horizon, params.juncture) if force else None
        if b is None:
            if total >= horizon:
                b = window_boundary(pauses, s, horizon, params)
            else:
                break
        out.append(Segment(s, b))
        s = b
    if total > s:
        out.append(Segment(s, total))
    return out
