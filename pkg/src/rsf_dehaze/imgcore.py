"""Image container conventions, color-space conversions, and quality metrics.

Images are channel-major ``float32`` numpy arrays of shape ``(C, H, W)``.
Displayable content lives in [0, 1]; intermediate tensors may exceed that
range.  Metric accumulation happens in float64.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .pngio import decode_image, encode_image  # noqa: F401  (public re-export)

# Full-range BT.601: Y = 0.299 R + 0.587 G + 0.114 B,
# Cb = 0.564 (B - Y) + 0.5, Cr = 0.713 (R - Y) + 0.5.
RGB_TO_YCBCR = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.564 * 0.299, -0.564 * 0.587, 0.564 * (1.0 - 0.114)],
        [0.713 * (1.0 - 0.299), -0.713 * 0.587, -0.713 * 0.114],
    ],
    dtype=np.float64,
)
YCBCR_OFFSET = np.array([0.0, 0.5, 0.5], dtype=np.float64)
YCBCR_TO_RGB = np.linalg.inv(RGB_TO_YCBCR)

PSNR_CAP_DB = 99.0
_PSNR_MSE_FLOOR = 1e-10

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01**2
SSIM_C2 = 0.03**2


@dataclass
class MetricReport:
    """Full-reference quality scores for one image pair."""

    psnr: float
    ssim: float
    wall_time: float = 0.0


def require_image(img, channels=None, name="image"):
    """Validate the (C, H, W) layout and optionally pin the channel count."""
    img = np.asarray(img)
    if img.ndim != 3:
        raise InvalidInputError(f"{name} must be (channels, height, width), got shape {img.shape}")
    if channels is not None and img.shape[0] != channels:
        raise InvalidInputError(f"{name} must have {channels} channels, got {img.shape[0]}")
    return img


def _color_affine(img, matrix, offset):
    c, h, w = img.shape
    flat = img.reshape(3, -1).astype(np.float64, copy=False)
    out = matrix @ flat + offset[:, None]
    return out.reshape(3, h, w).astype(np.float32)


def rgb_to_ycbcr(img):
    """RGB -> full-range BT.601 YCbCr (channel 0 is luma)."""
    img = require_image(img, channels=3)
    return _color_affine(img, RGB_TO_YCBCR, YCBCR_OFFSET)


def ycbcr_to_rgb(img):
    """YCbCr -> RGB, clamped to [0, 1]."""
    img = require_image(img, channels=3)
    out = _color_affine(img, YCBCR_TO_RGB, -YCBCR_TO_RGB @ YCBCR_OFFSET)
    return np.clip(out, 0.0, 1.0)


def luma(img):
    """BT.601 luma of an RGB image as a (1, H, W) array."""
    img = require_image(img, channels=3)
    y = 0.299 * img[0] + 0.587 * img[1] + 0.114 * img[2]
    return y[None].astype(np.float32)


def brightness(img):
    """HSV value channel: per-pixel max over R, G, B."""
    img = require_image(img, channels=3)
    return img.max(axis=0, keepdims=True)


def saturation(img):
    """HSV saturation: (max - min) / max, defined as 0 where max = 0."""
    img = require_image(img, channels=3)
    mx = img.max(axis=0, keepdims=True)
    mn = img.min(axis=0, keepdims=True)
    out = np.zeros_like(mx)
    np.divide(mx - mn, mx, out=out, where=mx > 0)
    return out


def mse(a, b):
    """Mean squared error accumulated in float64."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise InvalidInputError(f"shape mismatch: {a.shape} vs {b.shape}")
    d = a.astype(np.float64) - b.astype(np.float64)
    return float(np.mean(d * d))


def psnr(a, b):
    """Peak signal-to-noise ratio in dB for unit-peak images, capped at 99 dB."""
    err = mse(a, b)
    if err < _PSNR_MSE_FLOOR:
        return PSNR_CAP_DB
    return min(10.0 * np.log10(1.0 / err), PSNR_CAP_DB)


def _gaussian_kernel1d(size, sigma):
    r = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    k = np.exp(-(r**2) / (2.0 * sigma**2))
    return k / k.sum()


def _correlate_valid_separable(img, kernel):
    """Valid-mode 2-D correlation with a separable symmetric kernel."""
    n = kernel.size
    h, w = img.shape
    tmp = np.zeros((h, w - n + 1), dtype=np.float64)
    for j in range(n):
        tmp += kernel[j] * img[:, j : j + w - n + 1]
    out = np.zeros((h - n + 1, w - n + 1), dtype=np.float64)
    for i in range(n):
        out += kernel[i] * tmp[i : i + h - n + 1]
    return out


def _to_gray(img):
    img = require_image(img)
    if img.shape[0] == 1:
        return img[0].astype(np.float64)
    if img.shape[0] == 3:
        return luma(img)[0].astype(np.float64)
    raise InvalidInputError(f"ssim expects 1 or 3 channels, got {img.shape[0]}")


def ssim(a, b):
    """Mean structural similarity over an 11x11 Gaussian window (sigma 1.5).

    RGB inputs are reduced to luma first; statistics use valid windows only,
    with the standard stabilizers C1 = 0.01^2 and C2 = 0.03^2.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise InvalidInputError(f"shape mismatch: {a.shape} vs {b.shape}")
    x = _to_gray(a)
    y = _to_gray(b)
    if min(x.shape) < SSIM_WINDOW:
        raise InvalidInputError(f"image {x.shape} smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} ssim window")
    k = _gaussian_kernel1d(SSIM_WINDOW, SSIM_SIGMA)
    mu_x = _correlate_valid_separable(x, k)
    mu_y = _correlate_valid_separable(y, k)
    xx = _correlate_valid_separable(x * x, k) - mu_x * mu_x
    yy = _correlate_valid_separable(y * y, k) - mu_y * mu_y
    xy = _correlate_valid_separable(x * y, k) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + SSIM_C1) * (2.0 * xy + SSIM_C2)
    den = (mu_x**2 + mu_y**2 + SSIM_C1) * (xx + yy + SSIM_C2)
    return float(np.mean(num / den))
