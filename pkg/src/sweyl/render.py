"""Deterministic plain-text outputs: CSV tables, PPM heatmaps, projections.

Everything here is display plumbing.  Floats print with 17 significant
digits so that CSV round-trips reproduce the in-memory doubles exactly;
images are plain-text P3 PPM so byte-identical reruns are trivial to
check.  The Robinson projection is a display-only monotone remap of
equirectangular rows built from the published 5-degree coefficient table.
"""

from __future__ import annotations

import math

import numpy as np

# Robinson's table: latitude (degrees), parallel length factor, distance
# of the parallel from the equator (normalized to 1 at the pole).
ROBINSON_TABLE = [
    (0, 1.0000, 0.0000),
    (5, 0.9986, 0.0620),
    (10, 0.9954, 0.1240),
    (15, 0.9900, 0.1860),
    (20, 0.9822, 0.2480),
    (25, 0.9730, 0.3100),
    (30, 0.9600, 0.3720),
    (35, 0.9427, 0.4340),
    (40, 0.9216, 0.4958),
    (45, 0.8962, 0.5571),
    (50, 0.8679, 0.6176),
    (55, 0.8350, 0.6769),
    (60, 0.7986, 0.7346),
    (65, 0.7597, 0.7903),
    (70, 0.7186, 0.8435),
    (75, 0.6732, 0.8936),
    (80, 0.6213, 0.9394),
    (85, 0.5722, 0.9761),
    (90, 0.5322, 1.0000),
]

_LATS = np.array([row[0] for row in ROBINSON_TABLE], dtype=float)
_PLEN = np.array([row[1] for row in ROBINSON_TABLE], dtype=float)
_PDFE = np.array([row[2] for row in ROBINSON_TABLE], dtype=float)

BACKGROUND = (200, 200, 200)


def fmt(x: float) -> str:
    """Render a float with 17 significant digits (round-trip safe)."""
    return format(float(x), ".17g")


def colorize(values: np.ndarray) -> np.ndarray:
    """Map a 2-D field to RGB bytes.

    Fields with negative entries get a symmetric diverging scale (blue,
    white, red) centered at zero; non-negative fields get a linear
    grayscale between min and max.
    """
    vals = np.asarray(values, dtype=float)
    out = np.zeros(vals.shape + (3,), dtype=np.uint8)
    if vals.min() < 0:
        vmax = np.max(np.abs(vals))
        t = vals / vmax if vmax > 0 else np.zeros_like(vals)
        fade = np.floor(255 * (1 - np.abs(t)) + 0.5).astype(np.uint8)
        neg = t < 0
        out[..., 0] = np.where(neg, fade, 255)
        out[..., 1] = fade
        out[..., 2] = np.where(neg, 255, fade)
    else:
        lo, hi = vals.min(), vals.max()
        span = hi - lo
        t = (vals - lo) / span if span > 0 else np.zeros_like(vals)
        gray = np.floor(255 * t + 0.5).astype(np.uint8)
        out[..., 0] = out[..., 1] = out[..., 2] = gray
    return out


def write_ppm(path, rgb: np.ndarray, comments=()) -> None:
    """Write an RGB byte array as plain-text P3 PPM."""
    rgb = np.asarray(rgb)
    h, w, _ = rgb.shape
    lines = ["P3"]
    for c in comments:
        lines.append(f"# {c}")
    lines.append(f"{w} {h}")
    lines.append("255")
    for row in rgb:
        for px in row:
            lines.append(f"{px[0]} {px[1]} {px[2]}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def robinson_remap(rgb: np.ndarray, background=BACKGROUND) -> np.ndarray:
    """Remap an equirectangular image into a Robinson-projected frame.

    Rows move vertically by the distance table and shrink horizontally by
    the parallel-length table; pixels are nearest-neighbor copies of the
    source, so rows stay monotone and no data values are altered.
    """
    rgb = np.asarray(rgb)
    h, w, _ = rgb.shape
    out = np.empty_like(rgb)
    out[...] = np.array(background, dtype=np.uint8)
    for r in range(h):
        y = 1 - 2 * (r + 0.5) / h  # +1 north pole, -1 south pole
        lat = float(np.interp(abs(y), _PDFE, _LATS))
        plen = float(np.interp(lat, _LATS, _PLEN))
        theta = math.radians(90 - math.copysign(lat, y))
        src_r = min(h - 1, max(0, int(theta / math.pi * h)))
        half = plen / 2
        for c in range(w):
            u = (c + 0.5) / w - 0.5
            if abs(u) <= half:
                src_c = int((u / plen + 0.5) * w)
                src_c = min(w - 1, max(0, src_c))
                out[r, c] = rgb[src_r, src_c]
    return out


def write_csv(path, header: list[str], rows, comments=()) -> None:
    """Write rows of mixed str/float cells; floats at 17 significant digits."""
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        cells = [cell if isinstance(cell, str) else fmt(cell) for cell in row]
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path):
    """Read back a CSV written by write_csv: (header, list of row lists)."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    lines = [ln for ln in lines if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


def equirect_grid(ntheta: int, nphi: int):
    """Cell-centered display grid over the sphere."""
    theta = (np.arange(ntheta) + 0.5) * math.pi / ntheta
    phi = np.arange(nphi) * 2 * math.pi / nphi
    return theta, phi
