"""Line voting over binary masks and extraction of supported segments.

Foreground pixels vote in a standard (rho, theta) accumulator with
theta in [0, 180) degrees and rho in [-diag, +diag]. Peaks survive a
greedy non-maximum suppression and are converted to finite segments by
walking each infinite line across the image and keeping the longest run
of positions backed by mask pixels within a perpendicular band,
bridging small gaps.
"""

import math

import numpy as np

from .geometry import LineSegment, line_param_range_in_rect


def hough_accumulator(mask: np.ndarray, rho_res: float = 1.0,
                      theta_res: float = 1.0):
    """Vote; returns (accumulator, rho_values, theta_values_deg)."""
    height, width = mask.shape
    ys, xs = np.nonzero(mask)
    diag = math.hypot(width - 1, height - 1)
    half_bins = int(math.ceil(diag / rho_res))
    rhos = (np.arange(2 * half_bins + 1) - half_bins) * rho_res
    thetas = np.arange(0.0, 180.0, theta_res)
    acc = np.zeros((len(rhos), len(thetas)), dtype=np.int64)
    if len(xs) == 0:
        return acc, rhos, thetas
    cos_t = np.cos(np.radians(thetas))
    sin_t = np.sin(np.radians(thetas))
    for ti in range(len(thetas)):
        r = xs * cos_t[ti] + ys * sin_t[ti]
        bins = np.rint(r / rho_res).astype(np.intp) + half_bins
        acc[:, ti] += np.bincount(bins, minlength=len(rhos))
    return acc, rhos, thetas


def find_peaks(acc: np.ndarray, rhos: np.ndarray, thetas: np.ndarray,
               min_votes: int, nms_rho: float, nms_theta: float,
               max_candidates: int):
    """Greedy NMS peak picking; returns [(rho, theta_deg, votes), ...]
    ordered by descending votes (ties: smaller rho, then theta)."""
    cand_r, cand_t = np.nonzero(acc >= min_votes)
    if len(cand_r) == 0:
        return []
    votes = acc[cand_r, cand_t]
    order = np.lexsort((cand_t, cand_r, -votes))
    peaks = []
    for k in order:
        rho = rhos[cand_r[k]]
        theta = thetas[cand_t[k]]
        suppressed = any(abs(rho - pr) <= nms_rho and abs(theta - pt) <= nms_theta
                         for pr, pt, _ in peaks)
        if suppressed:
            continue
        peaks.append((float(rho), float(theta), int(votes[k])))
        if len(peaks) >= max_candidates:
            break
    return peaks


def refine_line(rho: float, theta_deg: float, xs: np.ndarray, ys: np.ndarray,
                band_halfwidth: float) -> tuple[float, float]:
    """Refit (rho, theta) to the pixels within the band of the peak line.

    Accumulator bins quantize rho and theta; a total-least-squares fit
    of the supporting pixels recovers the line at sub-bin accuracy (the
    normal direction is the minor eigenvector of the support's scatter
    matrix). Falls back to the bin values for degenerate supports.
    """
    theta = math.radians(theta_deg)
    c, s = math.cos(theta), math.sin(theta)
    sel = np.abs(xs * c + ys * s - rho) <= band_halfwidth
    if sel.sum() < 2:
        return rho, theta_deg
    px = xs[sel].astype(float)
    py = ys[sel].astype(float)
    mx, my = px.mean(), py.mean()
    dx, dy = px - mx, py - my
    cov = np.array([[dx @ dx, dx @ dy], [dx @ dy, dy @ dy]])
    eigvals, eigvecs = np.linalg.eigh(cov)
    normal = eigvecs[:, 0]  # minor axis
    if abs(eigvals[1]) < 1e-12:
        return rho, theta_deg
    if normal[1] < 0 or (normal[1] == 0 and normal[0] < 0):
        normal = -normal
    theta_new = math.degrees(math.atan2(normal[1], normal[0])) % 180.0
    rad = math.radians(theta_new)
    rho_new = mx * math.cos(rad) + my * math.sin(rad)
    return float(rho_new), float(theta_new)


def trim_line_to_mask(rho: float, theta_deg: float, mask: np.ndarray,
                      band_halfwidth: float, gap_bridge: int):
    """Longest supported run of the line inside the image, or None.

    Positions along the line (1 px steps) count as supported when some
    mask pixel lies within band_halfwidth perpendicular distance; runs
    may bridge unsupported stretches of up to gap_bridge positions.
    """
    height, width = mask.shape
    theta = math.radians(theta_deg)
    c, s = math.cos(theta), math.sin(theta)
    ys, xs = np.nonzero(mask)
    if len(xs) == 0:
        return None
    offsets = xs * c + ys * s - rho
    near = np.abs(offsets) <= band_halfwidth
    if not near.any():
        return None
    trange = line_param_range_in_rect(rho, theta, width, height)
    if trange is None:
        return None
    t = ys[near] * c - xs[near] * s
    t = np.clip(t, trange[0], trange[1])
    positions = np.unique(np.rint(t).astype(np.int64))
    # split into runs: a break is a gap of more than gap_bridge positions
    breaks = np.nonzero(np.diff(positions) > gap_bridge + 1)[0]
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [len(positions) - 1]))
    extents = positions[ends] - positions[starts]
    best = int(np.argmax(extents))
    t0, t1 = float(positions[starts[best]]), float(positions[ends[best]])
    if t1 - t0 < 1.0:
        return None
    x1 = min(max(rho * c - t0 * s, 0.0), width - 1.0)
    y1 = min(max(rho * s + t0 * c, 0.0), height - 1.0)
    x2 = min(max(rho * c - t1 * s, 0.0), width - 1.0)
    y2 = min(max(rho * s + t1 * c, 0.0), height - 1.0)
    return (x1, y1), (x2, y2)


def lines_from_mask(mask: np.ndarray, rho_res: float, theta_res: float,
                    min_votes: int, nms_rho: float, nms_theta: float,
                    max_candidates: int, band_halfwidth: float,
                    gap_bridge: int) -> list[LineSegment]:
    """Full voting pipeline from a binary mask to candidate segments."""
    if not mask.any():
        return []
    acc, rhos, thetas = hough_accumulator(mask, rho_res, theta_res)
    peaks = find_peaks(acc, rhos, thetas, min_votes, nms_rho, nms_theta,
                       max_candidates)
    ys, xs = np.nonzero(mask)
    segments = []
    for rho, theta, votes in peaks:
        rho, theta = refine_line(rho, theta, xs, ys, band_halfwidth)
        trimmed = trim_line_to_mask(rho, theta, mask, band_halfwidth, gap_bridge)
        if trimmed is None:
            continue
        (x1, y1), (x2, y2) = trimmed
        seg = LineSegment(x1, y1, x2, y2, rho=rho, theta=theta,
                          votes=votes).canonical()
        segments.append(seg)
    return segments
