"""Region masks and the masked weighted loss evaluator.

Three masks balance text against background: mask1 selects non-text
pixels, mask2 its complement (text), and mask3 grows every word's
bounding rectangle by half its width horizontally and half its height
vertically to add local context. The loss evaluator scores a predicted
probability map against a ground-truth tensor on those masks; it only
measures, it does not train anything.
"""

import math
from dataclasses import dataclass

import numpy as np

from .annotations import SceneAnnotation
from .encoder import scene_coverage_mask
from .errors import ShapeMismatch
from .geometry import quad_aabb

LOG_EPS = 1e-12


@dataclass(frozen=True)
class LossWeights:
    alpha1: float = 0.1
    alpha2: float = 1.0
    alpha3: float = 2.5


@dataclass
class MaskTriple:
    mask1: np.ndarray  # non-text
    mask2: np.ndarray  # text
    mask3: np.ndarray  # text plus expanded context


@dataclass(frozen=True)
class LossReport:
    l1: float
    l2: float
    l3: float
    total: float


def build_masks(scene: SceneAnnotation) -> MaskTriple:
    """Build the (non-text, text, expanded-context) mask triple.

    mask2 is exactly the pixel set the encoder assigns character mass
    to, so losses evaluated against encoder output are consistent;
    mask1 is its pixel-wise complement.
    """
    mask2 = scene_coverage_mask(scene)
    mask3 = np.zeros_like(mask2)
    height, width = mask2.shape
    for word in scene.words:
        x_lo, y_lo, x_hi, y_hi = quad_aabb(word.quad)
        half_w = 0.5 * (x_hi - x_lo)
        half_h = 0.5 * (y_hi - y_lo)
        x0 = max(0, math.ceil(x_lo - half_w))
        x1 = min(width - 1, math.floor(x_hi + half_w))
        y0 = max(0, math.ceil(y_lo - half_h))
        y1 = min(height - 1, math.floor(y_hi + half_h))
        if x0 <= x1 and y0 <= y1:
            mask3[y0:y1 + 1, x0:x1 + 1] = True
    return MaskTriple(mask1=~mask2, mask2=mask2, mask3=mask3)


def evaluate_loss(pred: np.ndarray, gt: np.ndarray, masks: MaskTriple,
                  weights: LossWeights = LossWeights()) -> LossReport:
    """Weighted masked loss between predicted and target probability maps.

    l1: mean binary cross-entropy against the background target on
        non-text pixels; l2: same against the text target on text
        pixels; l3: mean relative entropy (KL divergence) from the
        target distribution to the prediction over all 38 channels on
        the context mask, which reduces to cross-entropy for one-hot
        targets and vanishes when pred == gt. Empty masks contribute 0;
        log arguments are clamped at 1e-12.
    """
    pred = np.asarray(pred, dtype=np.float64)
    gt = np.asarray(gt, dtype=np.float64)
    if pred.shape != gt.shape:
        raise ShapeMismatch(f"pred {pred.shape} vs gt {gt.shape}")
    if pred.shape[:2] != masks.mask1.shape:
        raise ShapeMismatch(f"masks {masks.mask1.shape} vs tensors {pred.shape[:2]}")

    def masked_mean(values, mask):
        return float(values[mask].mean()) if mask.any() else 0.0

    p_bg = pred[..., 0]
    p_text = pred[..., 1:].sum(axis=-1)
    l1 = masked_mean(-np.log(np.maximum(p_bg, LOG_EPS)), masks.mask1)
    l2 = masked_mean(-np.log(np.maximum(p_text, LOG_EPS)), masks.mask2)

    log_ratio = np.log(np.maximum(gt, LOG_EPS)) - np.log(np.maximum(pred, LOG_EPS))
    kl = (gt * log_ratio).sum(axis=-1)
    l3 = masked_mean(kl, masks.mask3)

    total = weights.alpha1 * l1 + weights.alpha2 * l2 + weights.alpha3 * l3
    return LossReport(l1=l1, l2=l2, l3=l3, total=total)
