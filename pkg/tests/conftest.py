from __future__ import annotations

import functools

import pytest

from medcube.acceptance import Corpus
from medcube.words import Presentation


@functools.lru_cache(maxsize=None)
def group(name: str, kind: str = "artin") -> Presentation:
    return Corpus().group(name, kind)


@pytest.fixture
def G():
    """G("p4")("a b") -> element; G("p4").pres is the presentation."""
    def make(name: str, kind: str = "artin"):
        p = group(name, kind)
        return p
    return make


def el(p: Presentation, text: str):
    return p.normalize(text)
