"""Closed template grammar producing English captions for scenes.

Two phrasing modes keep the grammar both countable and enumerable:
``collapse`` merges repeated (color, shape) pairs into number words
("two red circles"), ``enumerate`` lists every object singularly so each
object's shape word appears as its own token.
"""

from __future__ import annotations

import numpy as np

from .scene import Scene, SceneObject

GRAMMAR_VERSION = "1"

PREFIXES = ("a photo of", "an image of", "a picture of")
NUMBER_WORDS = {1: "one", 2: "two", 3: "three", 4: "four"}
PLURALS = {"circle": "circles", "square": "squares",
           "triangle": "triangles", "star": "stars"}
SINGULARS = {v: k for k, v in PLURALS.items()}


def relation_between(a: SceneObject, b: SceneObject) -> str:
    """Dominant-axis relation of a with respect to b."""
    dx = b.center[0] - a.center[0]
    dy = b.center[1] - a.center[1]
    if abs(dx) >= abs(dy):
        return "to the left of" if dx > 0 else "to the right of"
    return "above" if dy > 0 else "below"


def _phrase(color: str, shape: str, count: int) -> str:
    if count == 1:
        return f"a {color} {shape}"
    return f"{NUMBER_WORDS[count]} {color} {PLURALS[shape]}"


def caption(scene: Scene, style_seed: int = 0) -> str:
    """Deterministic caption naming every object's color and shape."""
    rng = np.random.default_rng(style_seed)
    prefix = PREFIXES[int(rng.integers(0, len(PREFIXES)))]
    collapse = bool(rng.integers(0, 2))
    return caption_styled(scene, prefix=prefix, collapse=collapse)


def caption_styled(scene: Scene, prefix: str = PREFIXES[0],
                   collapse: bool = True) -> str:
    objs = scene.objects
    if len(objs) == 2:
        a, b = objs
        if (a.color, a.shape) != (b.color, b.shape):
            rel = relation_between(a, b)
            return (f"{prefix} a {a.color} {a.shape} {rel} "
                    f"a {b.color} {b.shape}")
        if collapse:
            return f"{prefix} {_phrase(a.color, a.shape, 2)}"
        return f"{prefix} a {a.color} {a.shape} and a {b.color} {b.shape}"

    if collapse:
        groups: list[tuple[tuple[str, str], int]] = []
        for o in objs:
            key = (o.color, o.shape)
            for i, (k, n) in enumerate(groups):
                if k == key:
                    groups[i] = (k, n + 1)
                    break
            else:
                groups.append((key, 1))
        parts = [_phrase(color, shape, n) for (color, shape), n in groups]
    else:
        parts = [f"a {o.color} {o.shape}" for o in objs]
    return f"{prefix} {' and '.join(parts)}"


def mentioned_pairs(text: str) -> set[tuple[str, str]]:
    """(color, shape) pairs named in a grammar-producible caption."""
    words = text.split()
    pairs = set()
    for i, word in enumerate(words):
        shape = SINGULARS.get(word, word)
        if shape in PLURALS and i > 0:
            pairs.add((words[i - 1], shape))
    return pairs
