"""Detection quality protocols: line-overlap matching and box IoU."""

from dataclasses import dataclass

import numpy as np

from .annotations import SceneAnnotation
from .bbox import BoundingBox
from .errors import DegenerateQuad, DegenerateSegment, SoftPhocError
from .geometry import (LineSegment, quad_aabb, quad_area,
                       quad_mean_side_lengths, segment_quad_overlap_length)
from .spotting import Detection


@dataclass(frozen=True)
class EvalReport:
    true_positives: int
    false_positives: int
    false_negatives: int

    @property
    def precision(self) -> float:
        denom = self.true_positives + self.false_positives
        return self.true_positives / denom if denom else 1.0

    @property
    def recall(self) -> float:
        denom = self.true_positives + self.false_negatives
        return self.true_positives / denom if denom else 1.0

    @property
    def accuracy(self) -> float:
        denom = self.true_positives + self.false_positives + self.false_negatives
        return self.true_positives / denom if denom else 1.0

    @property
    def hmean(self) -> float:
        p, r = self.precision, self.recall
        return 2.0 * p * r / (p + r) if (p + r) > 0 else 0.0


def combine_reports(reports) -> EvalReport:
    """Merge per-scene reports by summing their counts."""
    return EvalReport(
        true_positives=sum(r.true_positives for r in reports),
        false_positives=sum(r.false_positives for r in reports),
        false_negatives=sum(r.false_negatives for r in reports),
    )


def line_box_overlap(segment: LineSegment, quad: np.ndarray) -> float:
    """How well a segment covers a quad's major axis, in [0, 1].

    clipped_length / max(segment_length, quad_major_axis), where
    clipped_length is the length of the segment inside the quad and the
    major axis is the longer mean side-pair length. Penalizes both
    segments that undershoot the word and ones that overshoot it.
    """
    length = segment.length
    if length <= 0.0:
        raise DegenerateSegment("zero-length segment")
    quad = np.asarray(quad, dtype=float).reshape(4, 2)
    if quad_area(quad) <= 0.0:
        raise DegenerateQuad("quad has zero area")
    clipped = segment_quad_overlap_length(
        (segment.x1, segment.y1), (segment.x2, segment.y2), quad)
    major_axis = max(quad_mean_side_lengths(quad))
    return clipped / max(length, major_axis)


def _greedy_match(detections, gt_words, scores, threshold):
    """One-to-one assignment by descending score; returns matched pairs."""
    pairs = [(scores[di][gi], di, gi)
             for di in range(len(detections))
             for gi in range(len(gt_words))
             if scores[di][gi] >= threshold]
    pairs.sort(key=lambda p: (-p[0], p[1], p[2]))
    used_det, used_gt, matches = set(), set(), []
    for score, di, gi in pairs:
        if di in used_det or gi in used_gt:
            continue
        used_det.add(di)
        used_gt.add(gi)
        matches.append((di, gi))
    return matches


def _queried_transcriptions(detections, queries):
    if queries is None:
        return {d.query.lower() for d in detections}
    return {q.lower() for q in queries}


def _check_threshold(value, name):
    if not (0.0 < value < 1.0):
        raise SoftPhocError(f"{name} {value} outside (0, 1)")


def evaluate_lines(detections: list[Detection], gt: SceneAnnotation,
                   threshold: float, queries=None) -> EvalReport:
    """Line protocol: a detection is correct when its overlap with some
    unmatched ground-truth word of the same transcription reaches the
    threshold. Transcription comparison is case-insensitive.

    `queries` lists every transcription that was searched for (so
    queries with no returned detection still count their ground-truth
    words as misses); it defaults to the detections' own queries.
    """
    _check_threshold(threshold, "overlap threshold")
    queried = _queried_transcriptions(detections, queries)
    gt_words = [w for w in gt.words if w.transcription.lower() in queried]
    scores = [[line_box_overlap(det.segment, word.quad)
               if det.query.lower() == word.transcription.lower() else -1.0
               for word in gt_words]
              for det in detections]
    matches = _greedy_match(detections, gt_words, scores, threshold)
    tp = len(matches)
    return EvalReport(true_positives=tp,
                      false_positives=len(detections) - tp,
                      false_negatives=len(gt_words) - tp)


def box_quad_iou(box: BoundingBox, quad: np.ndarray) -> float:
    """IoU between a detected box and the quad's axis-aligned bounding box."""
    bx0, by0, bx1, by1 = box.extent
    qx0, qy0, qx1, qy1 = quad_aabb(quad)
    ix = max(0.0, min(bx1, qx1) - max(bx0, qx0))
    iy = max(0.0, min(by1, qy1) - max(by0, qy0))
    inter = ix * iy
    union = (bx1 - bx0) * (by1 - by0) + (qx1 - qx0) * (qy1 - qy0) - inter
    return inter / union if union > 0 else 0.0


def evaluate_bboxes(boxes: list[tuple[str, BoundingBox]], gt: SceneAnnotation,
                    iou_threshold: float = 0.5, queries=None) -> EvalReport:
    """Box protocol: standard IoU against the ground-truth quad's
    axis-aligned bounding rectangle, with the same greedy
    same-transcription matching as the line protocol."""
    _check_threshold(iou_threshold, "IoU threshold")
    queried = {q.lower() for q in (queries if queries is not None
                                   else [q for q, _ in boxes])}
    gt_words = [w for w in gt.words if w.transcription.lower() in queried]
    scores = [[box_quad_iou(box, word.quad)
               if query.lower() == word.transcription.lower() else -1.0
               for word in gt_words]
              for query, box in boxes]
    matches = _greedy_match(boxes, gt_words, scores, iou_threshold)
    tp = len(matches)
    return EvalReport(true_positives=tp,
                      false_positives=len(boxes) - tp,
                      false_negatives=len(gt_words) - tp)
