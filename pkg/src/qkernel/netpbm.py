"""Minimal binary PBM/PGM writers and readers (enough for the figure artifacts)."""

from __future__ import annotations

from pathlib import Path

import numpy as np


def write_pbm(path, image) -> Path:
    """Write a boolean image; True pixels are black."""
    img = np.asarray(image, dtype=bool)
    h, w = img.shape
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(f"P4\n{w} {h}\n".encode("ascii"))
        fh.write(np.packbits(img, axis=1).tobytes())
    return path


def write_pgm(path, image, maxval: int | None = None) -> Path:
    """Write a nonnegative integer image as 8-bit grayscale, scaled to ``maxval``."""
    img = np.asarray(image, dtype=np.float64)
    h, w = img.shape
    top = float(maxval if maxval is not None else img.max()) or 1.0
    data = np.clip(np.rint(img * 255.0 / top), 0, 255).astype(np.uint8)
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(data.tobytes())
    return path


def read_netpbm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    fields = []
    pos = 0
    want = 3
    while len(fields) < want:
        while raw[pos:pos + 1].isspace():
            pos += 1
        start = pos
        while not raw[pos:pos + 1].isspace():
            pos += 1
        fields.append(raw[start:pos].decode("ascii"))
        if fields[0] == "P5":
            want = 4
    pos += 1
    magic, w, h = fields[0], int(fields[1]), int(fields[2])
    body = raw[pos:]
    if magic == "P4":
        rows = np.frombuffer(body, dtype=np.uint8).reshape(h, -1)
        return np.unpackbits(rows, axis=1)[:, :w].astype(bool)
    if magic == "P5":
        return np.frombuffer(body, dtype=np.uint8).reshape(h, w)
    raise ValueError(f"unsupported netpbm magic {magic!r}")


def bar_chart(values, height: int = 200, bar_width: int = 3) -> np.ndarray:
    """Render signed values as a black-on-white bar chart around a zero line."""
    vals = np.asarray(values, dtype=np.float64)
    lo = min(0.0, float(vals.min()))
    hi = max(0.0, float(vals.max()))
    span = (hi - lo) or 1.0
    zero = int(round((hi / span) * (height - 1)))
    img = np.zeros((height, len(vals) * bar_width), dtype=bool)
    for k, v in enumerate(vals):
        y = int(round(((hi - v) / span) * (height - 1)))
        top, bottom = sorted((y, zero))
        img[top:bottom + 1, k * bar_width:(k + 1) * bar_width - 1] = True
    img[zero, :] = True
    return img


def line_plot(values, height: int = 200, x_scale: int = 4) -> np.ndarray:
    vals = np.asarray(values, dtype=np.float64)
    lo, hi = float(vals.min()), float(vals.max())
    span = (hi - lo) or 1.0
    w = (len(vals) - 1) * x_scale + 1 if len(vals) > 1 else 1
    img = np.zeros((height, w), dtype=bool)
    ys = [int(round((hi - v) / span * (height - 1))) for v in vals]
    for k in range(len(vals)):
        img[ys[k], k * x_scale] = True
        if k + 1 < len(vals):
            for s in range(1, x_scale + 1):
                y = int(round(ys[k] + (ys[k + 1] - ys[k]) * s / x_scale))
                img[y, k * x_scale + s] = True
    return img
