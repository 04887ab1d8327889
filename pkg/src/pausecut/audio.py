"""WAV/PCM decoding and fixed-duration framing.

Audio enters the toolkit as mono 16-bit PCM and is cut into frames of
10, 20 or 30 ms.  Frame boundaries are the time grid every downstream
component (labelling, pause detection, segmentation) lives on, so all
frame-aligned instants are produced by :func:`frame_time` and nothing
else; this keeps batch and incremental code paths bit-identical.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

SUPPORTED_FRAME_MS = (10, 20, 30)


class WavError(ValueError):
    """Base class for WAV decoding failures."""


class MalformedWavError(WavError):
    """The byte stream is not a well-formed RIFF/WAVE container."""


class UnsupportedWavError(WavError):
    """Well-formed WAV, but not PCM16 mono."""


def frame_time(index: int, frame_ms: int) -> float:
    """Time in seconds of frame boundary `index` on the `frame_ms` grid.

    Single rounding (`index * frame_ms` is exact integer math), so two
    call sites computing the time of the same boundary always get the
    same float.
    """
    return index * frame_ms / 1000.0


@dataclass
class AudioClip:
    """Decoded mono PCM audio: int16 samples plus their sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.int16)
        if self.samples.ndim != 1:
            raise ValueError("AudioClip is mono: samples must be one-dimensional")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")

    @property
    def duration(self) -> float:
        """Length in seconds; 0.0 iff the clip is empty."""
        return len(self.samples) / self.sample_rate

    def __len__(self) -> int:
        return len(self.samples)


@dataclass
class Frame:
    """One fixed-duration slice of a clip.

    `padding` is the number of zero samples appended to complete a
    trailing partial frame; such a frame is also flagged `final`.
    Clips whose sample count is an exact frame multiple have no
    final-flagged frame.
    """

    samples: np.ndarray
    index: int
    frame_ms: int
    padding: int = 0
    final: bool = field(default=False)

    @property
    def start_time(self) -> float:
        return frame_time(self.index, self.frame_ms)


def samples_per_frame(sample_rate: int, frame_ms: int) -> int:
    """Frame length in samples; raises if the grid does not divide evenly."""
    if frame_ms not in SUPPORTED_FRAME_MS:
        raise ValueError(f"frame_ms must be one of {SUPPORTED_FRAME_MS}, got {frame_ms}")
    if (sample_rate * frame_ms) % 1000 != 0:
        raise ValueError(
            f"incompatible rate/frame: {sample_rate} Hz samples do not divide "
            f"evenly into {frame_ms} ms frames"
        )
    return sample_rate * frame_ms // 1000


def frames(clip: AudioClip, frame_ms: int) -> list[Frame]:
    """Cut `clip` into consecutive `frame_ms` frames.

    The trailing partial frame, if any, is zero-padded to full length and
    flagged final so the frame sequence always covers the whole timeline.
    Concatenating the slices and trimming the final padding reproduces
    the clip's samples exactly.
    """
    return list(iter_frames(clip, frame_ms))


def iter_frames(clip: AudioClip, frame_ms: int) -> Iterator[Frame]:
    """Pull-based variant of :func:`frames`; single-consumer."""
    spf = samples_per_frame(clip.sample_rate, frame_ms)
    total = len(clip.samples)
    n_full = total // spf
    for i in range(n_full):
        yield Frame(clip.samples[i * spf : (i + 1) * spf], i, frame_ms)
    rem = total - n_full * spf
    if rem:
        padded = np.zeros(spf, dtype=np.int16)
        padded[:rem] = clip.samples[n_full * spf :]
        yield Frame(padded, n_full, frame_ms, padding=spf - rem, final=True)


def num_frames(clip: AudioClip, frame_ms: int) -> int:
    spf = samples_per_frame(clip.sample_rate, frame_ms)
    return -(-len(clip.samples) // spf)


# -- WAV container ----------------------------------------------------------

_PCM_FORMAT_CODE = 1


def decode_wav(data: bytes) -> AudioClip:
    """Decode a RIFF/WAVE byte string (PCM, 16-bit, mono).

    Unknown chunks are skipped.  Malformed containers and unsupported
    encodings (format code, bit depth, channel count) are reported as
    distinct errors.
    """
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedWavError("malformed header: not a RIFF/WAVE stream")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        pos += 8
        body = data[pos : pos + size]
        if len(body) < size:
            raise MalformedWavError(f"truncated chunk {cid!r}")
        if cid == b"fmt ":
            if size < 16:
                raise MalformedWavError("malformed fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            payload = body
        pos += size + (size & 1)  # chunks are word-aligned

    if fmt is None:
        raise MalformedWavError("missing fmt chunk")
    if payload is None:
        raise MalformedWavError("missing data chunk")

    format_code, channels, sample_rate, _byte_rate, _block_align, bit_depth = fmt
    if format_code != _PCM_FORMAT_CODE:
        raise UnsupportedWavError(f"unsupported format code {format_code} (PCM only)")
    if bit_depth != 16:
        raise UnsupportedWavError(f"unsupported bit depth {bit_depth} (16-bit only)")
    if channels != 1:
        raise UnsupportedWavError(f"unsupported channel count {channels} (mono only)")

    if len(payload) % 2:
        payload = payload[:-1]  # stray pad byte
    samples = np.frombuffer(payload, dtype="<i2").astype(np.int16)
    return AudioClip(samples, sample_rate)


def decode_pcm16(data: bytes, sample_rate: int) -> AudioClip:
    """Decode headerless little-endian PCM16 mono."""
    if len(data) % 2:
        raise ValueError("raw PCM16 byte count must be even")
    return AudioClip(np.frombuffer(data, dtype="<i2").astype(np.int16), sample_rate)


def encode_wav(clip: AudioClip) -> bytes:
    """Serialize a clip as a canonical 44-byte-header PCM16 mono WAV."""
    payload = clip.samples.astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        _PCM_FORMAT_CODE,
        1,
        clip.sample_rate,
        clip.sample_rate * 2,
        2,
        16,
        b"data",
        len(payload),
    )
    return header + payload


def read_wav(path) -> AudioClip:
    with open(path, "rb") as fh:
        return decode_wav(fh.read())


def write_wav(path, clip: AudioClip) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_wav(clip))
