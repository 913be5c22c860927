"""Training example constructors for the four task families."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..condition import ImageSegment, InterleavedCondition, TextSegment
from ..utils import derive_seed
from .caption import caption, caption_styled, PREFIXES
from .palette import COLORS
from .scene import (
    PlacementError,
    Scene,
    SceneConstraints,
    SceneObject,
    add_object,
    generate_scene,
    object_bbox,
    object_mask,
    recolor_object,
    remove_object,
    render,
    swap_background,
    _boxes_intersect,
)
from .vocab import Vocabulary

TASKS = ("t2i", "i2i", "edit", "objects")


@dataclass
class TrainingExample:
    condition: InterleavedCondition
    target: np.ndarray  # (H, W, 3) float32 in [0, 1]
    task: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        text_segs = sum(isinstance(s, TextSegment) for s in self.condition.segments)
        img_segs = self.condition.n_images
        if self.task == "t2i" and not (img_segs == 0 and text_segs == 1):
            raise ValueError("t2i condition must be a single text segment")
        if self.task == "i2i" and not (img_segs == 1 and text_segs == 0):
            raise ValueError("i2i condition must be a single image segment")
        if self.task == "edit" and not (img_segs == 1 and text_segs == 1):
            raise ValueError("edit condition must be one image plus instruction")
        if self.task == "objects" and not (1 <= img_segs <= 3 and text_segs == 1):
            raise ValueError("objects condition must be 1-3 crops plus caption")


def crop_object(image: np.ndarray, scene: Scene, index: int,
                margin: int = 2) -> tuple[np.ndarray, tuple[int, int, int, int]]:
    """Tight mask bbox + margin, nearest-neighbor resized to the full canvas."""
    obj = scene.objects[index]
    mask = object_mask(obj, scene.canvas)
    ys, xs = np.nonzero(mask)
    h, w = image.shape[:2]
    x0 = max(0, xs.min() - margin)
    y0 = max(0, ys.min() - margin)
    x1 = min(w, xs.max() + 1 + margin)
    y1 = min(h, ys.max() + 1 + margin)
    patch = image[y0:y1, x0:x1]
    ph, pw = patch.shape[:2]
    rows = np.minimum((np.arange(h) * ph) // h, ph - 1)
    cols = np.minimum((np.arange(w) * pw) // w, pw - 1)
    resized = patch[rows][:, cols]
    return np.ascontiguousarray(resized), (int(x0), int(y0), int(x1), int(y1))


def make_t2i_example(seed: int, vocab: Vocabulary,
                     canvas: tuple[int, int] = (64, 64)) -> TrainingExample:
    scene = generate_scene(derive_seed(seed, "scene"), canvas=canvas)
    style_seed = derive_seed(seed, "style")
    text = caption(scene, style_seed)
    return TrainingExample(
        condition=InterleavedCondition([TextSegment(vocab.tokenize(text))]),
        target=render(scene),
        task="t2i",
        meta={"scene": scene.to_json_dict(), "caption": text,
              "style_seed": style_seed},
    )


def make_i2i_example(seed: int, vocab: Vocabulary,
                     canvas: tuple[int, int] = (64, 64)) -> TrainingExample:
    scene = generate_scene(derive_seed(seed, "scene"), canvas=canvas)
    img = render(scene)
    return TrainingExample(
        condition=InterleavedCondition([ImageSegment(img)]),
        target=img,
        task="i2i",
        meta={"scene": scene.to_json_dict()},
    )


def make_objects_driven(seed: int, vocab: Vocabulary,
                        canvas: tuple[int, int] = (64, 64),
                        margin: int = 2) -> TrainingExample:
    scene = generate_scene(derive_seed(seed, "scene"), canvas=canvas)
    rng = np.random.default_rng(derive_seed(seed, "pick"))
    n = len(scene.objects)
    k = min(3, n)
    selected = sorted(rng.choice(n, size=k, replace=False).tolist())
    img = render(scene)
    crops, boxes = [], []
    for idx in selected:
        crop, box = crop_object(img, scene, idx, margin)
        crops.append(crop)
        boxes.append(box)
    prefix = PREFIXES[int(np.random.default_rng(derive_seed(seed, "style"))
                          .integers(0, len(PREFIXES)))]
    # Enumerating style: every selected object's shape word is its own token.
    text = caption_styled(scene, prefix=prefix, collapse=False)
    segments = [ImageSegment(c) for c in crops] + [TextSegment(vocab.tokenize(text))]
    return TrainingExample(
        condition=InterleavedCondition(segments),
        target=img,
        task="objects",
        meta={"scene": scene.to_json_dict(), "caption": text,
              "selected": selected, "crop_boxes": boxes},
    )


EDIT_OPS = ("recolor", "remove", "add", "background")


def _feasible_ops(scene: Scene) -> list[str]:
    ops = ["recolor", "background"]
    if len(scene.objects) >= 2:
        ops.append("remove")
    if len(scene.objects) <= 3:
        ops.append("add")
    return ops


def _place_new_object(scene: Scene, rng: np.random.Generator) -> SceneObject | None:
    w, h = scene.canvas
    present = {(o.color, o.shape) for o in scene.objects}
    for _ in range(80):
        shape = str(rng.choice(("circle", "square", "triangle", "star")))
        color = str(rng.choice([c for c in COLORS if c != scene.background]))
        if (color, shape) in present:
            continue
        size = str(rng.choice(("small", "large")))
        from .palette import SIZES
        r = SIZES[size]
        cx = int(rng.integers(r, w - r))
        cy = int(rng.integers(r, h - r))
        cand = SceneObject(shape, color, size, (cx, cy))
        box = object_bbox(cand)
        if any(_boxes_intersect(box, object_bbox(o)) for o in scene.objects):
            continue
        return cand
    return None


def make_edit_pair(seed: int, vocab: Vocabulary,
                   canvas: tuple[int, int] = (64, 64)) -> TrainingExample:
    # Unique (color, shape) pairs keep every edit instruction unambiguous.
    source = generate_scene(derive_seed(seed, "scene"),
                            SceneConstraints(unique_pairs=True), canvas=canvas)
    rng = np.random.default_rng(derive_seed(seed, "edit"))
    op = str(rng.choice(_feasible_ops(source)))

    if op == "add":
        new_obj = _place_new_object(source, rng)
        if new_obj is None:
            op = "recolor"  # dense scene: fall back to an always-feasible op

    if op == "recolor":
        idx = int(rng.integers(len(source.objects)))
        obj = source.objects[idx]
        taken = {o.color for o in source.objects if o.shape == obj.shape}
        choices = [c for c in COLORS
                   if c not in taken and c != source.background]
        new_color = str(rng.choice(choices))
        target = recolor_object(source, idx, new_color)
        instruction = f"recolor the {obj.color} {obj.shape} to {new_color}"
        descriptor = {"op": "recolor", "shape": obj.shape, "color": obj.color,
                      "new_color": new_color, "index": idx}
    elif op == "remove":
        idx = int(rng.integers(len(source.objects)))
        obj = source.objects[idx]
        target = remove_object(source, idx)
        instruction = f"remove the {obj.color} {obj.shape}"
        descriptor = {"op": "remove", "shape": obj.shape, "color": obj.color,
                      "index": idx}
    elif op == "add":
        target = add_object(source, new_obj)
        instruction = f"add a {new_obj.color} {new_obj.shape}"
        descriptor = {"op": "add", "shape": new_obj.shape,
                      "color": new_obj.color}
    else:  # background
        choices = [c for c in COLORS if c != source.background
                   and c not in {o.color for o in source.objects}]
        new_bg = str(rng.choice(choices))
        target = swap_background(source, new_bg)
        instruction = f"change the background to {new_bg}"
        descriptor = {"op": "background", "old": source.background,
                      "new": new_bg}

    src_img = render(source)
    return TrainingExample(
        condition=InterleavedCondition(
            [ImageSegment(src_img), TextSegment(vocab.tokenize(instruction))]),
        target=render(target),
        task="edit",
        meta={"scene": target.to_json_dict(),
              "source_scene": source.to_json_dict(),
              "edit": descriptor, "instruction": instruction},
    )


MAKERS = {
    "t2i": make_t2i_example,
    "i2i": make_i2i_example,
    "edit": make_edit_pair,
    "objects": make_objects_driven,
}


def make_example(task: str, seed: int, vocab: Vocabulary,
                 canvas: tuple[int, int] = (64, 64)) -> TrainingExample:
    return MAKERS[task](seed, vocab, canvas=canvas)
