"""Diverging weight colormap: blue through white to red.

Interpolation runs in CIELAB so perceived lightness changes evenly across
each half. The three anchors (domain start, midpoint, domain end) return
their exact configured colors with no float round trip.
"""

from __future__ import annotations

BLUE = "#2166ac"
WHITE = "#ffffff"
RED = "#b2182b"

_XN, _YN, _ZN = 0.95047, 1.0, 1.08883
_DELTA = 6 / 29


def hex_to_rgb(color: str) -> tuple[int, int, int]:
    color = color.lstrip("#")
    return tuple(int(color[i : i + 2], 16) for i in (0, 2, 4))


def rgb_to_hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _srgb_to_linear(c: float) -> float:
    return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4


def _linear_to_srgb(c: float) -> float:
    return 12.92 * c if c <= 0.0031308 else 1.055 * c ** (1 / 2.4) - 0.055


def _f(t: float) -> float:
    return t ** (1 / 3) if t > _DELTA**3 else t / (3 * _DELTA**2) + 4 / 29


def _f_inv(t: float) -> float:
    return t**3 if t > _DELTA else 3 * _DELTA**2 * (t - 4 / 29)


def rgb_to_lab(rgb: tuple[int, int, int]) -> tuple[float, float, float]:
    r, g, b = (_srgb_to_linear(c / 255) for c in rgb)
    x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b
    y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b
    z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b
    fx, fy, fz = _f(x / _XN), _f(y / _YN), _f(z / _ZN)
    return (116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz))


def lab_to_rgb(lab: tuple[float, float, float]) -> tuple[int, int, int]:
    light, a, b = lab
    fy = (light + 16) / 116
    fx = fy + a / 500
    fz = fy - b / 200
    x = _XN * _f_inv(fx)
    y = _YN * _f_inv(fy)
    z = _ZN * _f_inv(fz)
    r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z
    g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z
    bb = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z
    channels = []
    for c in (r, g, bb):
        c = _linear_to_srgb(c)
        channels.append(max(0, min(255, round(c * 255))))
    return tuple(channels)


def lerp_lab(color_a: str, color_b: str, t: float) -> str:
    la = rgb_to_lab(hex_to_rgb(color_a))
    lb = rgb_to_lab(hex_to_rgb(color_b))
    mixed = tuple(a + (b - a) * t for a, b in zip(la, lb))
    return rgb_to_hex(lab_to_rgb(mixed))


def diverging_color(
    value: float,
    domain: tuple[float, float],
    low_color: str = BLUE,
    mid_color: str = WHITE,
    high_color: str = RED,
) -> str:
    """Color for a value in a diverging domain. Values are assumed already
    clamped into the domain; the three anchors return exact colors."""
    lo, hi = domain
    mid = (lo + hi) / 2
    if value == lo:
        return low_color
    if value == mid:
        return mid_color
    if value == hi:
        return high_color
    if value < mid:
        return lerp_lab(low_color, mid_color, (value - lo) / (mid - lo))
    return lerp_lab(mid_color, high_color, (value - mid) / (hi - mid))
