"""Pure numpy fallback for the Neumann double sum."""
import math

import numpy as np

_CHUNK = 256


def neumann_sum(mid_a, dl_a, mid_b, dl_b):
    """Return (sum of dl_a.dl_b / |r_a - r_b|, min midpoint distance)."""
    mid_a, dl_a, mid_b, dl_b = (np.ascontiguousarray(x, dtype=float)
                                for x in (mid_a, dl_a, mid_b, dl_b))
    parts = []
    min_r2 = math.inf
    for start in range(0, len(mid_a), _CHUNK):
        stop = start + _CHUNK
        d = mid_a[start:stop, None, :] - mid_b[None, :, :]
        r2 = d[..., 0] ** 2 + d[..., 1] ** 2 + d[..., 2] ** 2
        min_r2 = min(min_r2, float(r2.min()))
        dot = dl_a[start:stop, None, :] * dl_b[None, :, :]
        dot = dot[..., 0] + dot[..., 1] + dot[..., 2]
        parts.append((dot / np.sqrt(r2)).ravel())
    total = math.fsum(np.concatenate(parts).tolist()) if parts else 0.0
    return total, math.sqrt(min_r2)
