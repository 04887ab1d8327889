"""Decode PCM audio and cut it into fixed-duration frames.

Builds a short WAV in memory (no files needed), decodes it, and walks
through the framing behaviour, including the zero-padded final frame.
"""

import numpy as np

from pausecut import AudioClip, decode_wav, encode_wav, frames

rate = 16000

# 1.01 s of a 440 Hz tone: one second of full frames plus a 10 ms tail
t = np.arange(int(rate * 1.01)) / rate
samples = (12000 * np.sin(2 * np.pi * 440 * t)).astype(np.int16)
clip = AudioClip(samples, rate)

wav_bytes = encode_wav(clip)
print(f"WAV container: {len(wav_bytes)} bytes "
      f"({len(wav_bytes) - 44} payload + 44 header)")

decoded = decode_wav(wav_bytes)
print(f"decoded: {len(decoded)} samples at {decoded.sample_rate} Hz "
      f"-> {decoded.duration:.3f} s")
assert np.array_equal(decoded.samples, clip.samples)

for frame_ms in (10, 20, 30):
    fs = frames(decoded, frame_ms)
    tail = fs[-1]
    print(f"{frame_ms:>3} ms frames: {len(fs):3d} total, "
          f"final padded={tail.final} (padding={tail.padding} samples)")

# the frame sequence always reassembles the original clip exactly
fs = frames(decoded, 20)
joined = np.concatenate([f.samples for f in fs])[: len(decoded.samples)]
print("round-trip reassembly exact:", np.array_equal(joined, decoded.samples))
