"""Short-term audio features and long-term segment statistics.

Short-term analysis runs on 50 ms frames with a 25 ms step.  Each frame
yields six features: energy, zero-crossing rate, spectral centroid,
spectral spread, spectral rolloff at 0.90 and spectral flux.  Long-term
segments are 2.0 s, non-overlapping; a trailing remainder shorter than a
segment is dropped.  Each segment becomes a 12-dim vector: the six frame
means followed by the six frame standard deviations.

Energy and zero-crossing rate use the raw frame; the spectral features
use the magnitude spectrum of the Hamming-windowed frame.  Frequencies
are in Hz.
"""

from __future__ import annotations

import wave

import numpy as np

from ..errors import ParameterError, ValidationError
from .classes import SegmentFeatures

SHORT_WINDOW_S = 0.050
SHORT_STEP_S = 0.025
SEGMENT_S = 2.0

FEATURE_NAMES = ("energy", "zcr", "centroid", "spread", "rolloff", "flux")
ROLLOFF_FRACTION = 0.90


def read_wav(path: str) -> tuple[np.ndarray, int]:
    """Reads a 16-bit PCM mono WAV file into float64 samples in [-1, 1]."""
    try:
        with wave.open(path, "rb") as wf:
            channels = wf.getnchannels()
            width = wf.getsampwidth()
            rate = wf.getframerate()
            frames = wf.readframes(wf.getnframes())
    except wave.Error as exc:
        raise ValidationError(f"{path}: not a readable WAV file ({exc})") from exc
    if channels != 1:
        raise ValidationError(
            f"{path}: {channels} channels; downmix to mono first "
            "(e.g. ffmpeg -i in.wav -ac 1 out.wav)"
        )
    if width != 2:
        raise ValidationError(f"{path}: expected 16-bit PCM, got {8 * width}-bit")
    samples = np.frombuffer(frames, dtype="<i2").astype(np.float64) / 32768.0
    return samples, rate


def _frame_features(frame: np.ndarray, window: np.ndarray, freqs: np.ndarray,
                    prev_norm_spectrum: np.ndarray | None) -> tuple[np.ndarray, np.ndarray]:
    energy = float(np.mean(frame * frame))

    signs = np.sign(frame)
    zcr = float(np.sum(np.abs(np.diff(signs))) / (2.0 * (len(frame) - 1)))

    spectrum = np.abs(np.fft.rfft(frame * window))
    total = float(spectrum.sum())
    if total > 0.0:
        centroid = float(np.dot(freqs, spectrum) / total)
        spread = float(np.sqrt(np.dot((freqs - centroid) ** 2, spectrum) / total))
        cumulative = np.cumsum(spectrum)
        rolloff_bin = int(np.searchsorted(cumulative, ROLLOFF_FRACTION * total))
        rolloff = float(freqs[min(rolloff_bin, len(freqs) - 1)])
        norm = spectrum / total
    else:
        centroid = spread = rolloff = 0.0
        norm = spectrum  # all zero

    if prev_norm_spectrum is None:
        flux = 0.0
    else:
        diff = norm - prev_norm_spectrum
        flux = float(np.dot(diff, diff))

    return np.array([energy, zcr, centroid, spread, rolloff, flux]), norm


def short_term_features(samples: np.ndarray, rate: int) -> np.ndarray:
    """(frames, 6) matrix of short-term features over the whole signal."""
    win = round(SHORT_WINDOW_S * rate)
    step = round(SHORT_STEP_S * rate)
    if len(samples) < win:
        raise ValidationError("audio shorter than one analysis frame")
    window = np.hamming(win)
    freqs = np.fft.rfftfreq(win, d=1.0 / rate)
    rows = []
    prev = None
    for start in range(0, len(samples) - win + 1, step):
        feats, prev = _frame_features(samples[start : start + win], window, freqs, prev)
        rows.append(feats)
    return np.array(rows)


def extract_features(samples: np.ndarray, rate: int, movie_id: str = "") -> SegmentFeatures:
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1:
        raise ValidationError(
            f"expected mono audio, got {samples.ndim}-D input; downmix to a single channel first"
        )
    if rate < 8000:
        raise ParameterError(f"sample rate must be at least 8000 Hz, got {rate}")
    seg_len = round(SEGMENT_S * rate)
    n_segments = len(samples) // seg_len
    if n_segments == 0:
        raise ValidationError(
            f"audio is shorter than one {SEGMENT_S} s segment ({len(samples) / rate:.3f} s)"
        )

    vectors = np.empty((n_segments, 12))
    for s in range(n_segments):
        frames = short_term_features(samples[s * seg_len : (s + 1) * seg_len], rate)
        vectors[s, :6] = frames.mean(axis=0)
        vectors[s, 6:] = frames.std(axis=0)
    return SegmentFeatures(movie_id=movie_id, vectors=vectors)
