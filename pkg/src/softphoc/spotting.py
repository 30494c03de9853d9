"""Query-driven line spotting.

Given a per-pixel character probability map and a query transcription:
build the query's consecutive-pair (bigram) heatmap, threshold it
relative to its peak response, propose candidate text lines with the
Hough transform, sample the probability map along each candidate, and
rank candidates by DTW distance against the query's own fixed-width
descriptor.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import alphabet, hough
from .dtw import dtw_distance
from .encoder import encode_word
from .errors import DegenerateSegment, EmptyTranscription, SoftPhocError
from .geometry import LineSegment
from .warp import bilinear_sample


@dataclass(frozen=True)
class SpottingConfig:
    """Pipeline knobs; only heatmap_threshold has a principled default,
    the rest are voting/extraction plumbing."""

    heatmap_threshold: float = 0.2
    hough_rho_res: float = 1.0
    hough_theta_res: float = 1.0
    hough_min_votes: int = 20
    nms_rho: float = 5.0
    nms_theta: float = 5.0
    max_candidates: int = 20
    gap_bridge: int = 5
    band_halfwidth: float = 2.0
    query_samples_per_char: int = 10


@dataclass(frozen=True)
class Detection:
    query: str
    segment: LineSegment
    dtw_distance: float
    candidates_considered: int = 0


def bigram_heatmap(prob: np.ndarray, query: str) -> np.ndarray:
    """Pixel-wise sum of products of consecutive query-character channels.

    For "text" this is P(t)P(e) + P(e)P(x) + P(x)P(t); repeated pairs
    reuse the same channel. Single-character queries fall back to the
    character's own channel.
    """
    classes = alphabet.transcription_to_classes(query)
    if len(classes) == 1:
        return np.array(prob[..., classes[0]], dtype=np.float64)
    heat = np.zeros(prob.shape[:2], dtype=np.float64)
    for a, b in zip(classes[:-1], classes[1:]):
        heat += prob[..., a].astype(np.float64) * prob[..., b].astype(np.float64)
    return heat


def threshold_mask(heatmap: np.ndarray, threshold: float) -> np.ndarray:
    """Binary mask of pixels with value >= threshold (boundary inclusive)."""
    if not (0.0 < threshold < 1.0):
        raise SoftPhocError(f"threshold {threshold} outside (0, 1)")
    return np.asarray(heatmap) >= threshold


def hough_lines(mask: np.ndarray, cfg: SpottingConfig = SpottingConfig()) -> list[LineSegment]:
    """Candidate text-line segments for a binary mask (may be empty)."""
    return hough.lines_from_mask(
        mask,
        rho_res=cfg.hough_rho_res,
        theta_res=cfg.hough_theta_res,
        min_votes=cfg.hough_min_votes,
        nms_rho=cfg.nms_rho,
        nms_theta=cfg.nms_theta,
        max_candidates=cfg.max_candidates,
        band_halfwidth=cfg.band_halfwidth,
        gap_bridge=cfg.gap_bridge,
    )


def query_descriptor(query: str, cfg: SpottingConfig = SpottingConfig()) -> np.ndarray:
    """Fixed-width (samples_per_char * |query|, 38) descriptor sequence."""
    if not query:
        raise EmptyTranscription("query must be non-empty")
    width = cfg.query_samples_per_char * len(query)
    return encode_word(query, width, 1)[0]


def sample_line_descriptor(prob: np.ndarray, segment: LineSegment) -> np.ndarray:
    """Probability-map profile along a segment at 1 px steps.

    The segment is canonicalized (left-to-right, ties top-to-bottom)
    first, so reversed endpoints produce the identical sequence. Returns
    (floor(length) + 1, 38).
    """
    seg = segment.canonical()
    length = seg.length
    if length < 1e-9:
        raise DegenerateSegment("cannot sample a zero-length segment")
    n_samples = int(math.floor(length)) + 1
    ts = np.arange(n_samples, dtype=np.float64)
    ux = (seg.x2 - seg.x1) / length
    uy = (seg.y2 - seg.y1) / length
    return bilinear_sample(prob, seg.x1 + ts * ux, seg.y1 + ts * uy)


def spot(prob: np.ndarray, query: str, cfg: SpottingConfig = SpottingConfig()):
    """Best line for a query, or None when nothing qualifies.

    The bigram heatmap is normalized by its peak before thresholding:
    exact soft annotations are much flatter than the near-binary output
    of a trained predictor, so the threshold is interpreted as a
    fraction of the strongest response. Candidates are ranked by DTW
    distance; ties fall back to more Hough votes, then smaller rho,
    then smaller theta.
    """
    if not query:
        raise EmptyTranscription("query must be non-empty")
    heat = bigram_heatmap(prob, query)
    peak = float(heat.max()) if heat.size else 0.0
    if peak <= 0.0:
        return None
    mask = threshold_mask(heat / peak, cfg.heatmap_threshold)
    candidates = hough_lines(mask, cfg)
    if not candidates:
        return None
    reference = query_descriptor(query, cfg)
    best = None
    for seg in candidates:
        distance = dtw_distance(sample_line_descriptor(prob, seg), reference)
        key = (distance, -seg.votes, seg.rho, seg.theta)
        if best is None or key < best[0]:
            best = (key, seg, distance)
    return Detection(query=query, segment=best[1], dtw_distance=best[2],
                     candidates_considered=len(candidates))
