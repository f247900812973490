"""Pure-numpy implementations of the hot kernels.

This is the fallback path used when numba is unavailable or disabled via
``RSF_BACKEND=numpy``.  Convolutions are expressed as einsum contractions
over sliding-window views so the heavy lifting lands in BLAS.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def conv2d_forward(xpad, weight, bias):
    """Valid cross-correlation of a padded (C,H,W) input with (O,C,k,k) weights."""
    k = weight.shape[2]
    win = sliding_window_view(xpad, (k, k), axis=(1, 2))  # (C, H, W, k, k)
    out = np.einsum("ockl,chwkl->ohw", weight, win, optimize=True)
    out += bias[:, None, None]
    return np.ascontiguousarray(out)


def conv2d_input_grad(gout, weight):
    """Gradient wrt the padded input: full correlation with the flipped kernel."""
    k = weight.shape[2]
    gfull = np.pad(gout, ((0, 0), (k - 1, k - 1), (k - 1, k - 1)))
    win = sliding_window_view(gfull, (k, k), axis=(1, 2))
    wflip = weight[:, :, ::-1, ::-1]
    gx = np.einsum("ockl,ohwkl->chw", wflip, win, optimize=True)
    return np.ascontiguousarray(gx)


def conv2d_weight_grad(xpad, gout):
    """Gradients wrt weights and bias of the valid cross-correlation."""
    out_h, out_w = gout.shape[1], gout.shape[2]
    win = sliding_window_view(xpad, (out_h, out_w), axis=(1, 2))  # (C, k, k, H, W)
    gw = np.einsum("ohw,cklhw->ockl", gout, win, optimize=True)
    gb = gout.sum(axis=(1, 2))
    return np.ascontiguousarray(gw), gb


def unfilter_scanlines(raw, n_rows, row_bytes, bpp):
    """Undo per-row PNG filtering in place on a (rows, 1+row_bytes) uint8 array.

    ``raw[:, 0]`` holds the filter byte of each row; the remaining columns are
    the filtered samples.  Returns the reconstructed samples without the
    filter column.
    """
    out = np.zeros((n_rows, row_bytes), dtype=np.uint8)
    for r in range(n_rows):
        ftype = int(raw[r, 0])
        line = raw[r, 1:].copy()
        prior = out[r - 1] if r > 0 else np.zeros(row_bytes, dtype=np.uint8)
        if ftype == 0:
            out[r] = line
        elif ftype == 1:
            grouped = line.reshape(-1, bpp)
            out[r] = np.add.accumulate(grouped, axis=0, dtype=np.uint8).ravel()
        elif ftype == 2:
            out[r] = line + prior
        elif ftype == 3:
            row = out[r]
            for x in range(row_bytes):
                left = int(row[x - bpp]) if x >= bpp else 0
                row[x] = (int(line[x]) + ((left + int(prior[x])) >> 1)) & 0xFF
        elif ftype == 4:
            row = out[r]
            for x in range(row_bytes):
                a = int(row[x - bpp]) if x >= bpp else 0
                b = int(prior[x])
                c = int(prior[x - bpp]) if x >= bpp else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                if pa <= pb and pa <= pc:
                    pred = a
                elif pb <= pc:
                    pred = b
                else:
                    pred = c
                row[x] = (int(line[x]) + pred) & 0xFF
        else:
            raise ValueError(f"unknown PNG filter type {ftype} in row {r}")
    return out
