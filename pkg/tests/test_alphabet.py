import pytest
from hypothesis import given
from hypothesis import strategies as st

from softphoc.alphabet import (BACKGROUND, NUM_CLASSES, PUNCTUATION,
                               classify_char, transcription_to_classes)
from softphoc.errors import EmptyTranscription


def test_letters_fold_case():
    assert classify_char("P") == 16
    assert classify_char("p") == 16
    assert classify_char("a") == 1
    assert classify_char("Z") == 26


def test_digits():
    assert classify_char("7") == 34
    assert classify_char("0") == 27
    assert classify_char("9") == 36


def test_punctuation_catch_all():
    for c in "€!.,;@# ä٧":
        assert classify_char(c) == PUNCTUATION


def test_transcription_examples():
    assert transcription_to_classes("AB") == [1, 2]
    assert transcription_to_classes("a1") == [1, 28]


def test_empty_transcription_raises():
    with pytest.raises(EmptyTranscription):
        transcription_to_classes("")


@given(st.characters())
def test_classify_total_and_never_background(c):
    cls = classify_char(c)
    assert 1 <= cls < NUM_CLASSES
    assert cls != BACKGROUND


@given(st.characters())
def test_classify_case_insensitive(c):
    lowered = c.lower()
    if len(lowered) == 1:
        assert classify_char(c) == classify_char(lowered)


@given(st.text(min_size=1, max_size=40))
def test_length_matches_word(word):
    assert len(transcription_to_classes(word)) == len(word)
