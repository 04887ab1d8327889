"""Frame labelling and pause extraction with the energy VAD.

Synthesizes speech-like audio (tone bursts separated by silence), labels
every 20 ms frame at each aggressiveness mode, and extracts the pauses
the segmenters consume.  Higher modes never add speech frames -- the
label sets form a descending chain.
"""

import numpy as np

from pausecut import AudioClip, VadConfig, classify, detect_pauses

rate = 16000


def tone(seconds, freq=440.0, amp=14000):
    t = np.arange(int(rate * seconds)) / rate
    return (amp * np.sin(2 * np.pi * freq * t)).astype(np.int16)


def silence(seconds):
    return np.zeros(int(rate * seconds), dtype=np.int16)


clip = AudioClip(
    np.concatenate([tone(1.2), silence(0.7), tone(0.8, 300), silence(0.3), tone(1.0, 600)]),
    rate,
)
print(f"clip: {clip.duration:.2f} s (speech-silence alternation)\n")

previous_speech = None
for mode in range(4):
    track = classify(clip, VadConfig(mode, 20))
    speech = int(track.labels.sum())
    line = track.to_label_line()
    print(f"mode {mode}: {speech:3d}/{track.total_frames} speech frames")
    print(f"        {line}")
    if previous_speech is not None:
        assert speech <= previous_speech, "aggressiveness monotonicity violated"
    previous_speech = speech

print("\npauses at mode 2 (every non-speech run):")
track = classify(clip, VadConfig(2, 20))
for p in detect_pauses(track):
    print(f"  start {p.start:6.2f} s   duration {p.duration * 1000:6.0f} ms   frames {p.frame_span}")

print("\npauses of at least 550 ms (terminal-juncture candidates):")
for p in detect_pauses(track, min_pause_ms=550):
    print(f"  start {p.start:6.2f} s   duration {p.duration * 1000:6.0f} ms")
