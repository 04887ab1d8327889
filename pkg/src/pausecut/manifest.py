"""Segment manifests: the on-disk exchange format.

A manifest is an ordered list of `{wav, offset, duration}` records with
six-decimal seconds -- the shape speech-translation evaluation pipelines
consume -- either as a YAML list or as JSON lines behind a flag.  Dropped
segments are omitted unless explicitly emitted, in which case they carry
`dropped: true`.  The effective run configuration is echoed in a header
(comment lines in YAML, a leading config record in JSON lines).

Rendering is deterministic: identical entries and header produce
byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

import yaml

from .segmenters import Segment

YAML_FORMAT = "yaml"
JSONL_FORMAT = "jsonl"


@dataclass(frozen=True)
class ManifestEntry:
    wav: str
    offset: float
    duration: float
    dropped: bool = False

    @property
    def end(self) -> float:
        return self.offset + self.duration


class ManifestError(ValueError):
    """Raised for unparseable or inconsistent manifests."""


def segments_to_entries(
    segments: list[Segment],
    wav_name: str,
    clip_duration: float | None = None,
    emit_dropped: bool = False,
) -> list[ManifestEntry]:
    """Convert segmenter output to manifest entries.

    Segmenters that work on the padded frame timeline can overrun the
    true clip end by part of a frame; `clip_duration` clamps the tail so
    no entry points past the audio.
    """
    entries = []
    for seg in segments:
        start, end = seg.start, seg.end
        if clip_duration is not None:
            if start >= clip_duration:
                continue
            end = min(end, clip_duration)
        if end <= start:
            continue
        if not seg.kept and not emit_dropped:
            continue
        entries.append(ManifestEntry(wav_name, start, end - start, dropped=not seg.kept))
    return entries


def render_manifest(
    entries: list[ManifestEntry], header: dict | None = None, fmt: str = YAML_FORMAT
) -> str:
    if fmt == YAML_FORMAT:
        return _render_yaml(entries, header or {})
    if fmt == JSONL_FORMAT:
        return _render_jsonl(entries, header or {})
    raise ValueError(f"unknown manifest format {fmt!r}")


def _render_yaml(entries: list[ManifestEntry], header: dict) -> str:
    lines = ["# pausecut manifest v1"]
    for key in sorted(header):
        lines.append(f"# {key}: {header[key]}")
    for e in entries:
        extra = ", dropped: true" if e.dropped else ""
        lines.append(
            f"- {{wav: {e.wav}, offset: {e.offset:.6f}, duration: {e.duration:.6f}{extra}}}"
        )
    if not entries:
        lines.append("[]")
    return "\n".join(lines) + "\n"


def _render_jsonl(entries: list[ManifestEntry], header: dict) -> str:
    lines = [json.dumps({"pausecut_manifest": 1, "config": header}, sort_keys=True)]
    for e in entries:
        record: dict = {"wav": e.wav, "offset": round(e.offset, 6), "duration": round(e.duration, 6)}
        if e.dropped:
            record["dropped"] = True
        lines.append(json.dumps(record, sort_keys=True))
    return "\n".join(lines) + "\n"


def write_manifest(
    path, entries: list[ManifestEntry], header: dict | None = None, fmt: str = YAML_FORMAT
) -> None:
    """Atomic write: render to a temp file, then rename over `path`."""
    text = render_manifest(entries, header, fmt)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".manifest-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_manifest(text: str) -> tuple[list[ManifestEntry], dict]:
    """Parse either manifest format; returns (entries, header)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_jsonl(text)
    return _parse_yaml(text)


def read_manifest(path) -> tuple[list[ManifestEntry], dict]:
    with open(path) as fh:
        return parse_manifest(fh.read())


def _parse_yaml(text: str) -> tuple[list[ManifestEntry], dict]:
    header = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            continue
        body = line[1:].strip()
        if ":" in body:
            key, _, value = body.partition(":")
            header[key.strip()] = value.strip()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ManifestError(f"invalid YAML manifest: {exc}") from exc
    if data is None:
        data = []
    if not isinstance(data, list):
        raise ManifestError("manifest must be a list of records")
    return [_entry_from_record(r) for r in data], header


def _parse_jsonl(text: str) -> tuple[list[ManifestEntry], dict]:
    entries = []
    header: dict = {}
    for i, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"invalid JSON on line {i + 1}: {exc}") from exc
        if "pausecut_manifest" in record:
            header = record.get("config", {})
            continue
        entries.append(_entry_from_record(record))
    return entries, header


def _entry_from_record(record) -> ManifestEntry:
    if not isinstance(record, dict):
        raise ManifestError(f"manifest record must be a mapping, got {record!r}")
    try:
        return ManifestEntry(
            wav=str(record["wav"]),
            offset=float(record["offset"]),
            duration=float(record["duration"]),
            dropped=bool(record.get("dropped", False)),
        )
    except KeyError as exc:
        raise ManifestError(f"manifest record missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"bad manifest record {record!r}: {exc}") from exc


def coverage_end(entries: list[ManifestEntry]) -> float:
    return max((e.end for e in entries), default=0.0)


# Manifest values carry six decimals, so adjacent entries can disagree by
# up to a microsecond after rounding; seams inside this tolerance are
# treated as contiguous rather than as real gaps or overlaps.
SEAM_TOLERANCE = 1e-5


def entries_to_segments(
    entries: list[ManifestEntry], total_duration: float | None = None
) -> list[Segment]:
    """Normalize a manifest into a gap-free tiling of [0, total_duration).

    Manifests usually list kept audio only; the uncovered remainder
    (leading, internal, trailing) is filled with dropped segments so
    stats and boundary comparison see the full timeline.
    """
    ordered = sorted(entries, key=lambda e: e.offset)
    total = total_duration if total_duration is not None else coverage_end(ordered)
    segments = []
    cursor = 0.0
    for e in ordered:
        if e.duration <= 0:
            raise ManifestError(f"non-positive duration in record for {e.wav!r}")
        if e.offset < cursor - SEAM_TOLERANCE:
            raise ManifestError(f"overlapping segments at offset {e.offset:.6f}")
        if e.offset > cursor + SEAM_TOLERANCE:
            segments.append(Segment(cursor, e.offset, kept=False))
            cursor = e.offset
        if e.end <= cursor:
            raise ManifestError(f"overlapping segments at offset {e.offset:.6f}")
        segments.append(Segment(cursor, e.end, kept=not e.dropped))
        cursor = e.end
    if total > cursor:
        segments.append(Segment(cursor, total, kept=False))
    return segments
