"""Symbolic scenes and their exact rasterization.

A Scene is the ground truth for every downstream metric: rendering is a pure
function of its fields, object bounding boxes never overlap, and every pixel
takes an exact palette value (no anti-aliasing).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from matplotlib.path import Path

from .palette import COLORS, PALETTE, SHAPES, SIZES, to_float


class PlacementError(RuntimeError):
    """Raised when constraints cannot be satisfied within bounded retries."""


@dataclass(frozen=True)
class SceneObject:
    shape: str
    color: str
    size: str
    center: tuple[int, int]  # (x, y) in canvas pixels

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.color not in COLORS:
            raise ValueError(f"unknown color {self.color!r}")
        if self.size not in SIZES:
            raise ValueError(f"unknown size {self.size!r}")

    @property
    def radius(self) -> int:
        return SIZES[self.size]


@dataclass(frozen=True)
class Scene:
    canvas: tuple[int, int]  # (width, height)
    background: str
    objects: tuple[SceneObject, ...]

    def __post_init__(self):
        if not 1 <= len(self.objects) <= 4:
            raise ValueError("scene must contain 1..4 objects")
        if self.background in {o.color for o in self.objects}:
            raise ValueError("background color collides with an object color")
        w, h = self.canvas
        for obj in self.objects:
            x0, y0, x1, y1 = object_bbox(obj)
            if x0 < 0 or y0 < 0 or x1 > w or y1 > h:
                raise ValueError("object extends outside the canvas")
        boxes = [object_bbox(o) for o in self.objects]
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if _boxes_intersect(boxes[i], boxes[j]):
                    raise ValueError("object bounding boxes overlap")

    def to_json_dict(self) -> dict:
        return {
            "canvas": list(self.canvas),
            "background": self.background,
            "objects": [
                {"shape": o.shape, "color": o.color, "size": o.size,
                 "center": list(o.center)}
                for o in self.objects
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "Scene":
        return Scene(
            canvas=tuple(d["canvas"]),
            background=d["background"],
            objects=tuple(
                SceneObject(o["shape"], o["color"], o["size"], tuple(o["center"]))
                for o in d["objects"]
            ),
        )


def object_bbox(obj: SceneObject) -> tuple[int, int, int, int]:
    """Conservative square bbox (x0, y0, x1, y1), exclusive upper bounds."""
    cx, cy = obj.center
    r = obj.radius
    return (cx - r, cy - r, cx + r + 1, cy + r + 1)


def _boxes_intersect(a, b) -> bool:
    ax0, ay0, ax1, ay1 = a
    bx0, by0, bx1, by1 = b
    return ax0 < bx1 and bx0 < ax1 and ay0 < by1 and by0 < ay1


def bbox_iou(a, b) -> float:
    ax0, ay0, ax1, ay1 = a
    bx0, by0, bx1, by1 = b
    ix = max(0, min(ax1, bx1) - max(ax0, bx0))
    iy = max(0, min(ay1, by1) - max(ay0, by0))
    inter = ix * iy
    if inter == 0:
        return 0.0
    area_a = (ax1 - ax0) * (ay1 - ay0)
    area_b = (bx1 - bx0) * (by1 - by0)
    return inter / (area_a + area_b - inter)


def _star_vertices(cx: float, cy: float, r: float) -> np.ndarray:
    # Point-up five-pointed star; image y axis grows downward.
    inner = 0.42 * r
    verts = []
    for k in range(5):
        ang_out = np.deg2rad(90 + 72 * k)
        ang_in = np.deg2rad(90 + 36 + 72 * k)
        verts.append((cx + r * np.cos(ang_out), cy - r * np.sin(ang_out)))
        verts.append((cx + inner * np.cos(ang_in), cy - inner * np.sin(ang_in)))
    return np.array(verts)


def object_mask(obj: SceneObject, canvas: tuple[int, int]) -> np.ndarray:
    """Boolean (H, W) mask of the object's pixels."""
    w, h = canvas
    cx, cy = obj.center
    r = obj.radius
    ys, xs = np.mgrid[0:h, 0:w]
    if obj.shape == "circle":
        return (xs - cx) ** 2 + (ys - cy) ** 2 <= r * r
    if obj.shape == "square":
        return (np.abs(xs - cx) <= r) & (np.abs(ys - cy) <= r)
    if obj.shape == "triangle":
        # Inscribed point-up triangle: apex (cx, cy-r), base at cy + r/2.
        s = 0.8660254037844386 * r
        v0 = (cx, cy - r)
        v1 = (cx - s, cy + 0.5 * r)
        v2 = (cx + s, cy + 0.5 * r)
        verts = np.array([v0, v1, v2])
    else:  # star
        verts = _star_vertices(cx, cy, r)
    pts = np.column_stack([xs.ravel(), ys.ravel()])
    inside = Path(verts).contains_points(pts, radius=0.01)
    return inside.reshape(h, w)


def render(scene: Scene) -> np.ndarray:
    """(H, W, 3) float32 image on the k/256 grid; pure in the scene fields."""
    w, h = scene.canvas
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:] = PALETTE[scene.background]
    for obj in scene.objects:
        img[object_mask(obj, scene.canvas)] = PALETTE[obj.color]
    return to_float(img)


@dataclass
class SceneConstraints:
    """Exact requirements for evaluation-prompt scene construction."""

    count: int | None = None
    shapes: list[str] | None = None   # per-object shape multiset
    colors: list[str] | None = None
    sizes: list[str] | None = None
    unique_shapes: bool = False
    unique_colors: bool = False
    unique_pairs: bool = False        # distinct (color, shape) pairs
    axis_margin: int = 0              # 2-object scenes: min axis dominance
    background: str | None = None

    def resolved_count(self) -> int | None:
        for lst in (self.shapes, self.colors, self.sizes):
            if lst is not None:
                if self.count is not None and self.count != len(lst):
                    raise ValueError("constraint count mismatch")
                return len(lst)
        return self.count


_MAX_SCENE_RESTARTS = 60
_MAX_PLACE_TRIES = 120


def generate_scene(seed: int, constraints: SceneConstraints | None = None,
                   canvas: tuple[int, int] = (64, 64)) -> Scene:
    """Deterministic scene for a seed; honors constraints exactly."""
    if seed < 0:
        raise ValueError("seed must be >= 0")
    cons = constraints or SceneConstraints()
    rng = np.random.default_rng(seed)
    w, h = canvas

    count = cons.resolved_count()
    if count is None:
        count = int(rng.integers(1, 5))
    if not 1 <= count <= 4:
        raise PlacementError(f"cannot place {count} non-overlapping objects")

    for _ in range(_MAX_SCENE_RESTARTS):
        shapes = list(cons.shapes) if cons.shapes else None
        if shapes is None:
            unique = cons.unique_shapes or cons.unique_pairs
            shapes = [str(s) for s in rng.choice(SHAPES, size=count,
                                                 replace=not unique)]
        colors = list(cons.colors) if cons.colors else None
        if colors is None:
            unique = cons.unique_colors or cons.unique_pairs
            colors = [str(c) for c in rng.choice(COLORS, size=count,
                                                 replace=not unique)]
        sizes = list(cons.sizes) if cons.sizes else [
            str(s) for s in rng.choice(list(SIZES), size=count, replace=True)]
        if cons.unique_pairs:
            pairs = set(zip(colors, shapes))
            if len(pairs) != count:
                continue

        background = cons.background or str(
            rng.choice([c for c in COLORS if c not in set(colors)]))
        if background in set(colors):
            continue

        objs: list[SceneObject] = []
        ok = True
        for shape, color, size in zip(shapes, colors, sizes):
            r = SIZES[size]
            placed = None
            for _ in range(_MAX_PLACE_TRIES):
                cx = int(rng.integers(r, w - r))
                cy = int(rng.integers(r, h - r))
                cand = SceneObject(shape, color, size, (cx, cy))
                box = object_bbox(cand)
                if any(_boxes_intersect(box, object_bbox(o)) for o in objs):
                    continue
                placed = cand
                break
            if placed is None:
                ok = False
                break
            objs.append(placed)
        if not ok:
            continue

        if count == 2 and cons.axis_margin > 0:
            dx = abs(objs[0].center[0] - objs[1].center[0])
            dy = abs(objs[0].center[1] - objs[1].center[1])
            if abs(dx - dy) < cons.axis_margin:
                continue

        return Scene(canvas=canvas, background=background, objects=tuple(objs))

    raise PlacementError(
        f"failed to satisfy constraints after {_MAX_SCENE_RESTARTS} restarts")


def remove_object(scene: Scene, index: int) -> Scene:
    objs = list(scene.objects)
    del objs[index]
    return replace(scene, objects=tuple(objs))


def recolor_object(scene: Scene, index: int, color: str) -> Scene:
    objs = list(scene.objects)
    objs[index] = replace(objs[index], color=color)
    return replace(scene, objects=tuple(objs))


def add_object(scene: Scene, obj: SceneObject) -> Scene:
    return replace(scene, objects=tuple(scene.objects) + (obj,))


def swap_background(scene: Scene, color: str) -> Scene:
    return replace(scene, background=color)
