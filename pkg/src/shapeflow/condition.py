"""Interleaved text/image condition passed from data generation to the encoder."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np


@dataclass
class TextSegment:
    token_ids: list[int]


@dataclass
class ImageSegment:
    image: np.ndarray  # (H, W, 3) float32 in [0, 1]


Segment = Union[TextSegment, ImageSegment]


@dataclass
class InterleavedCondition:
    """Ordered mixture of text-token and image segments; any count, any order."""

    segments: list = field(default_factory=list)

    def __post_init__(self):
        for seg in self.segments:
            if not isinstance(seg, (TextSegment, ImageSegment)):
                raise TypeError(f"unsupported segment type {type(seg).__name__}")

    @property
    def has_images(self) -> bool:
        return any(isinstance(s, ImageSegment) for s in self.segments)

    @property
    def n_images(self) -> int:
        return sum(isinstance(s, ImageSegment) for s in self.segments)


def text_condition(token_ids: list[int]) -> InterleavedCondition:
    return InterleavedCondition([TextSegment(list(token_ids))])


def image_condition(image: np.ndarray) -> InterleavedCondition:
    return InterleavedCondition([ImageSegment(image)])
