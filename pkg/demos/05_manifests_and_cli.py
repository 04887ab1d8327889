"""Manifests end to end: segment a WAV from the command line, read the
stats report, and score one segmentation against another.

Drives the installed CLI in-process (same entry point the `pausecut`
console script uses), inside a temporary directory.
"""

import pathlib
import tempfile

import numpy as np

from pausecut import AudioClip, write_wav
from pausecut.cli import main
from pausecut.manifest import read_manifest

rate = 16000
rng = np.random.default_rng(3)

parts = []
for _ in range(10):
    t = np.arange(int(rate * rng.uniform(2.0, 8.0))) / rate
    parts.append((13000 * np.sin(2 * np.pi * rng.uniform(250, 650) * t)).astype(np.int16))
    parts.append(np.zeros(int(rate * rng.uniform(0.3, 1.2)), dtype=np.int16))
clip = AudioClip(np.concatenate(parts), rate)

with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    wav = tmp / "talk.wav"
    write_wav(wav, clip)
    print(f"wrote {wav.name}: {clip.duration:.1f} s\n")

    hybrid = tmp / "hybrid.yaml"
    vad = tmp / "vad.yaml"
    print("$ pausecut segment --strategy hybrid --min-len 17 --max-len 20 talk.wav")
    assert main(["segment", "--strategy", "hybrid", "-o", str(hybrid), str(wav)]) == 0
    print("$ pausecut segment --strategy vad --emit-dropped talk.wav")
    assert main(["segment", "--strategy", "vad", "--emit-dropped", "-o", str(vad), str(wav)]) == 0

    entries, header = read_manifest(hybrid)
    print(f"\nhybrid manifest: {len(entries)} entries, header {header}")
    for e in entries[:3]:
        print(f"  - wav={e.wav} offset={e.offset:.6f} duration={e.duration:.6f}")
    if len(entries) > 3:
        print("  ...")

    print("\n$ pausecut stats hybrid.yaml")
    main(["stats", str(hybrid)])
    print("\n$ pausecut stats vad.yaml")
    main(["stats", str(vad)])

    print("\n$ pausecut compare hybrid.yaml vad.yaml --tolerance 0.5")
    main(["compare", str(hybrid), str(vad), "--tolerance", "0.5"])
