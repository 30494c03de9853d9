"""Word and scene ground-truth annotations."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateQuad, EmptyTranscription
from .geometry import quad_area


@dataclass
class WordAnnotation:
    """A quadrilateral word region with its transcription.

    The quad holds 4 (x, y) vertices ordered clockwise from the word's
    top-left corner (reading order), as in ICDAR-style ground truth.
    """

    quad: np.ndarray
    transcription: str

    def __post_init__(self):
        self.quad = np.asarray(self.quad, dtype=float).reshape(4, 2)
        if not self.transcription:
            raise EmptyTranscription("word annotation needs a transcription")
        if quad_area(self.quad) <= 0.0:
            raise DegenerateQuad(f"quad of {self.transcription!r} has zero area")


@dataclass
class SceneAnnotation:
    image_width: int
    image_height: int
    words: list[WordAnnotation] = field(default_factory=list)


def clamp_quad(quad: np.ndarray, image_width: int, image_height: int) -> np.ndarray:
    """Clamp out-of-image vertices to [0, W] x [0, H]."""
    q = np.asarray(quad, dtype=float).reshape(4, 2).copy()
    q[:, 0] = np.clip(q[:, 0], 0.0, float(image_width))
    q[:, 1] = np.clip(q[:, 1], 0.0, float(image_height))
    return q
