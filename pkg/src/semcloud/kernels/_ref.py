"""Pure-numpy fallback force kernels.

Same contracts as the compiled extension semcloud.kernels._core; used when
the extension is unavailable or SEMCLOUD_PURE=1 is set. Results can differ
from the compiled path in the last float bits (summation order), which is
why cross-backend tests compare structure, not trajectories.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def repulsion(pos: np.ndarray, half_w: np.ndarray, half_h: np.ndarray) -> np.ndarray:
    """Per-term overlap-resolving displacement vectors."""
    n = pos.shape[0]
    disp = np.zeros_like(pos)
    if n < 2:
        return disp

    dx = pos[None, :, 0] - pos[:, None, 0]  # dx[i, j] = x_j - x_i
    dy = pos[None, :, 1] - pos[:, None, 1]
    x_ov = (half_w[:, None] + half_w[None, :]) - np.abs(dx)
    y_ov = (half_h[:, None] + half_h[None, :]) - np.abs(dy)

    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    overlap = upper & (x_ov > 0) & (y_ov > 0)
    coincident = overlap & (dx == 0) & (dy == 0)
    vertical = overlap & ~coincident & (x_ov > y_ov)
    horizontal = overlap & ~coincident & ~vertical

    # P[i, j] = displacement applied to j by pair (i, j); i receives -P[i, j]
    px = np.zeros((n, n))
    py = np.zeros((n, n))
    sx = np.where(dx > 0, 1.0, np.where(dx < 0, -1.0, 1.0))
    sy = np.where(dy > 0, 1.0, np.where(dy < 0, -1.0, 1.0))
    px[horizontal] = (sx * x_ov * 0.5)[horizontal]
    py[vertical] = (sy * y_ov * 0.5)[vertical]
    px[coincident] = (x_ov * 0.5)[coincident]

    disp[:, 0] = px.sum(axis=0) - px.sum(axis=1)
    disp[:, 1] = py.sum(axis=0) - py.sum(axis=1)
    return disp


def attraction(
    pos: np.ndarray,
    eu: np.ndarray,
    ev: np.ndarray,
    ew: np.ndarray,
    attraction_gain: float,
    centering_gain: float,
) -> np.ndarray:
    """Per-term edge-attraction plus canvas-centering displacement vectors."""
    disp = np.zeros_like(pos)
    if eu.shape[0]:
        f = (pos[ev] - pos[eu]) * (ew * attraction_gain)[:, None]
        np.add.at(disp, eu, f)
        np.add.at(disp, ev, -f)
    disp -= pos * centering_gain
    return disp


def max_overlap_depth(pos: np.ndarray, half_w: np.ndarray, half_h: np.ndarray) -> float:
    """Largest min-axis overlap over all box pairs (0 when overlap-free)."""
    n = pos.shape[0]
    if n < 2:
        return 0.0
    dx = np.abs(pos[None, :, 0] - pos[:, None, 0])
    dy = np.abs(pos[None, :, 1] - pos[:, None, 1])
    x_ov = (half_w[:, None] + half_w[None, :]) - dx
    y_ov = (half_h[:, None] + half_h[None, :]) - dy
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    depth = np.minimum(x_ov, y_ov)
    depth[~(upper & (x_ov > 0) & (y_ov > 0))] = 0.0
    return float(depth.max(initial=0.0))


def settle_loop(
    pos: np.ndarray,
    half_w: np.ndarray,
    half_h: np.ndarray,
    eu: np.ndarray,
    ev: np.ndarray,
    ew: np.ndarray,
    iterations: int,
    attraction_gain: float,
    centering_gain: float,
    cap: float,
) -> None:
    """Run the damped force loop in place: alpha_t = 1 - t/iterations."""
    for t in range(iterations):
        alpha = 1.0 - t / iterations
        disp = repulsion(pos, half_w, half_h)
        disp += attraction(pos, eu, ev, ew, attraction_gain, centering_gain)
        disp *= alpha
        norm = np.hypot(disp[:, 0], disp[:, 1])
        over = norm > cap
        if over.any():
            disp[over] *= (cap / norm[over])[:, None]
        pos += disp


def _resolution_sweep(
    pos: np.ndarray, half_w: np.ndarray, half_h: np.ndarray, pinned: int
) -> None:
    # sequential (Gauss-Seidel) pair resolution; see the compiled kernel
    n = pos.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[j, 0] - pos[i, 0]
            dy = pos[j, 1] - pos[i, 1]
            x_ov = half_w[i] + half_w[j] - abs(dx)
            if x_ov <= 0:
                continue
            y_ov = half_h[i] + half_h[j] - abs(dy)
            if y_ov <= 0:
                continue
            if dx == 0 and dy == 0:
                axis, push, s = 0, x_ov, 1.0
            elif x_ov > y_ov:
                axis, push, s = 1, y_ov, (1.0 if dy > 0 else -1.0 if dy < 0 else 1.0)
            else:
                axis, push, s = 0, x_ov, (1.0 if dx > 0 else -1.0 if dx < 0 else 1.0)
            if i == pinned:
                pos[j, axis] += s * push
            elif j == pinned:
                pos[i, axis] -= s * push
            else:
                pos[i, axis] -= s * push * 0.5
                pos[j, axis] += s * push * 0.5


def resolve_overlaps(
    pos: np.ndarray,
    half_w: np.ndarray,
    half_h: np.ndarray,
    tolerance: float,
    max_passes: int,
    pinned: int = -1,
) -> int:
    """Undamped repulsion-only sweeps until max overlap depth <= tolerance.

    Returns the number of sweeps used, or -1 when the budget is exhausted.
    """
    if max_overlap_depth(pos, half_w, half_h) <= tolerance:
        return 0
    for p in range(max_passes):
        _resolution_sweep(pos, half_w, half_h, pinned)
        if max_overlap_depth(pos, half_w, half_h) <= tolerance:
            return p + 1
    return -1
