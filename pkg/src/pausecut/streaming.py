"""Incremental hybrid segmentation with a MAX_LEN latency bound.

Frames are pushed one at a time; each push runs the energy VAD one step,
updates pause bookkeeping, and emits every segment whose boundary has
become determined.  Determination points:

* forced splits (force variant): a pause that reaches the juncture length
  is the split no later pause can override, so its boundary goes out as
  soon as the pause closes -- or at the horizon, credited with its extent
  so far, if it is still open there;
* window splits: only the horizon s + max_len settles which eligible
  pause is longest, so the boundary is emitted on the first frame whose
  end time reaches the horizon.

Because pauses are credited only up to the horizon (see the segmenters
module), every decision uses past frames only, and the concatenation of
push emissions plus the flush remainder equals the batch segmenter run on
the full pause inventory -- exactly, not approximately.  The engine
therefore never holds more than one horizon of audio: buffered frames
span at most max_len plus the frame in flight.

One engine instance per stream.  The state is single-owner: move it
between threads, never share it.  Checkpointing serializes the whole
state as a versioned opaque blob (internal format, not a contract).
"""

from __future__ import annotations

import pickle
from collections import deque

from .audio import Frame, frame_time
from .segmenters import HybridParams, Segment, forced_boundary, window_boundary
from .vad import EnergyVad, Pause, VadConfig, frame_energy

_STATE_VERSION = 1


class StreamingSegmenter:
    """Push-based hybrid (or hybrid-force) segmenter."""

    def __init__(self, params: HybridParams, vad_config: VadConfig | None = None):
        self.params = params
        self.vad_config = vad_config or VadConfig()
        self._vad = EnergyVad(self.vad_config)
        self._segment_start = 0.0
        self._frames_pushed = 0
        self._run_start: int | None = None  # first frame of the open non-speech run
        self._pauses: list[Pause] = []  # closed, start >= segment start
        self._buffer: deque[Frame] = deque()
        self._finished = False

    @property
    def buffered_frames(self) -> int:
        return len(self._buffer)

    @property
    def frames_pushed(self) -> int:
        return self._frames_pushed

    @property
    def segment_start(self) -> float:
        return self._segment_start

    def push_frame(self, frame: Frame) -> list[Segment]:
        """Consume the next frame; return the segments it determined."""
        if self._finished:
            raise RuntimeError("stream already flushed")
        if frame.frame_ms != self.vad_config.frame_ms:
            raise ValueError(
                f"frame is {frame.frame_ms} ms but the engine expects {self.vad_config.frame_ms} ms"
            )
        if frame.index != self._frames_pushed:
            raise ValueError(
                f"out-of-order frame: expected index {self._frames_pushed}, got {frame.index}"
            )

        speech = self._vad.step(frame_energy(frame.samples))
        idx = frame.index
        if speech:
            if self._run_start is not None:
                self._pauses.append(
                    Pause.from_frames(self._run_start, idx - 1, self.vad_config.frame_ms)
                )
                self._run_start = None
        elif self._run_start is None:
            self._run_start = idx

        self._frames_pushed += 1
        self._buffer.append(frame)
        emitted = self._drain(frame_time(self._frames_pushed, self.vad_config.frame_ms))
        self._trim()
        return emitted

    def flush(self) -> list[Segment]:
        """Close the stream and emit everything still pending."""
        if self._finished:
            return []
        self._finished = True
        fm = self.vad_config.frame_ms
        if self._run_start is not None:
            self._pauses.append(Pause.from_frames(self._run_start, self._frames_pushed - 1, fm))
            self._run_start = None
        end = frame_time(self._frames_pushed, fm)
        emitted = self._drain(end)
        if end > self._segment_start:
            emitted.append(Segment(self._segment_start, end))
            self._segment_start = end
        self._buffer.clear()
        return emitted

    def _drain(self, now: float) -> list[Segment]:
        """Emit all boundaries determined by stream time `now`."""
        emitted = []
        while True:
            horizon = self._segment_start + self.params.max_len
            at_horizon = now >= horizon
            pauses = self._known_pauses(now) if at_horizon else self._pauses
            b = None
            if self.params.force_split:
                b = forced_boundary(pauses, self._segment_start, horizon, self.params.juncture)
            if b is None:
                if not at_horizon:
                    break
                b = window_boundary(pauses, self._segment_start, horizon, self.params)
            emitted.append(Segment(self._segment_start, b))
            self._segment_start = b
        return emitted

    def _known_pauses(self, now: float) -> list[Pause]:
        """Closed pauses plus the open run, credited up to `now`.

        Only consulted at or past the horizon, where the open run is
        certain to be truncated, so its final length is irrelevant.
        """
        if self._run_start is None:
            return self._pauses
        start = frame_time(self._run_start, self.vad_config.frame_ms)
        return self._pauses + [Pause(start=start, duration=now - start, end=now)]

    def _trim(self) -> None:
        s = self._segment_start
        self._pauses = [p for p in self._pauses if p.start >= s]
        fm = self.vad_config.frame_ms
        while self._buffer and frame_time(self._buffer[0].index + 1, fm) <= s:
            self._buffer.popleft()

    # -- checkpointing -----------------------------------------------------

    def save_state(self) -> bytes:
        """Opaque versioned snapshot of the whole engine state."""
        return pickle.dumps((_STATE_VERSION, self.__dict__))

    @classmethod
    def restore_state(cls, blob: bytes) -> "StreamingSegmenter":
        version, state = pickle.loads(blob)
        if version != _STATE_VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        engine = cls.__new__(cls)
        engine.__dict__.update(state)
        return engine
