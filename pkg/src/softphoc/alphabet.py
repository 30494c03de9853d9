"""The 38-class character space.

Channel 0 is reserved for background. Channels 1-26 hold the letters a-z
(case folded), 27-36 the digits 0-9, and channel 37 collects everything
else: punctuation, currency signs, non-Latin scripts.
"""

from .errors import EmptyTranscription

NUM_CLASSES = 38
NUM_CHAR_CLASSES = 37
BACKGROUND = 0
PUNCTUATION = 37

_LETTER_BASE = 1
_DIGIT_BASE = 27


def classify_char(c: str) -> int:
    """Map a single character to its channel index in [1, 37].

    Total and deterministic: letters fold case, ASCII digits use their
    own band, and any other character (including ones whose lowercase
    form is not a single code point) lands in the punctuation class.
    Never returns the background channel.
    """
    lowered = c.lower()
    if len(lowered) == 1:
        if "a" <= lowered <= "z":
            return _LETTER_BASE + ord(lowered) - ord("a")
        if "0" <= lowered <= "9":
            return _DIGIT_BASE + ord(lowered) - ord("0")
    return PUNCTUATION


def transcription_to_classes(word: str) -> list[int]:
    """Per-character channel indices for a non-empty transcription."""
    if not word:
        raise EmptyTranscription("transcription must contain at least one character")
    return [classify_char(c) for c in word]
