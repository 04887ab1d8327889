"""The incremental engine: bounded buffering, early forced splits, and
exact agreement with the batch segmenter.

Frames are pushed one at a time as they would arrive from a capture
device.  Watch when segments come out: window splits wait for the 20 s
horizon, forced splits leave as soon as their pause closes.  At the end,
the emissions are compared with the batch run over the same audio.
"""

import numpy as np

from pausecut import (
    AudioClip,
    HybridParams,
    StreamingSegmenter,
    VadConfig,
    classify,
    detect_pauses,
    frames,
    segment_hybrid_force,
)

rate = 16000
rng = np.random.default_rng(7)


def tone(seconds, freq=440.0):
    t = np.arange(int(rate * seconds)) / rate
    return (13000 * np.sin(2 * np.pi * freq * t)).astype(np.int16)


parts = []
for _ in range(8):
    parts.append(tone(rng.uniform(3.0, 10.0), rng.uniform(250, 650)))
    parts.append(np.zeros(int(rate * rng.uniform(0.3, 1.0)), dtype=np.int16))
clip = AudioClip(np.concatenate(parts), rate)
print(f"stream: {clip.duration:.1f} s, pushed in 20 ms frames\n")

params = HybridParams(17.0, 20.0, force_split=True, juncture_ms=550)
cfg = VadConfig(2, 20)
engine = StreamingSegmenter(params, cfg)

streamed = []
max_buffered = 0
for frame in frames(clip, 20):
    now = (frame.index + 1) * 0.02
    for seg in engine.push_frame(frame):
        lag = now - seg.end
        print(f"t={now:7.2f} s  emit [{seg.start:7.2f}, {seg.end:7.2f})  "
              f"len {seg.duration:5.2f} s  decided {lag:5.2f} s after boundary")
        streamed.append(seg)
    max_buffered = max(max_buffered, engine.buffered_frames)
streamed.extend(engine.flush())
print(f"flush -> last segment [{streamed[-1].start:.2f}, {streamed[-1].end:.2f})")
print(f"\npeak buffer: {max_buffered} frames "
      f"({max_buffered * 0.02:.2f} s; bound is max_len + one frame = {params.max_len + 0.02:.2f} s)")

track = classify(clip, cfg)
batch = segment_hybrid_force(detect_pauses(track), track.duration, params)
print("streaming output equals batch output:", streamed == batch)

# checkpoint midway through a second run and resume from the blob
engine_a = StreamingSegmenter(params, cfg)
fs = frames(clip, 20)
out = []
for f in fs[: len(fs) // 2]:
    out.extend(engine_a.push_frame(f))
blob = engine_a.save_state()
print(f"\ncheckpoint blob: {len(blob)} bytes at frame {len(fs) // 2}")
engine_b = StreamingSegmenter.restore_state(blob)
for f in fs[len(fs) // 2 :]:
    out.extend(engine_b.push_frame(f))
out.extend(engine_b.flush())
print("resumed run equals uninterrupted run:", out == streamed)
