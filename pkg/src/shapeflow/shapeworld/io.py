"""Dataset files: JSON records plus PNG blobs, with a seeds/counts manifest.

The seed of example i is ``derive_seed(global_seed, task, i)``, so any
parallel or partial generation schedule produces byte-identical datasets.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np
from PIL import Image

from ..condition import ImageSegment, InterleavedCondition, TextSegment
from ..utils import derive_seed
from .caption import GRAMMAR_VERSION
from .palette import to_float, to_u8
from .scene import Scene
from .tasks import TASKS, TrainingExample, make_example
from .vocab import Vocabulary, build_vocabulary

MANIFEST_NAME = "manifest.json"


def save_png(path: str, image_f32: np.ndarray) -> None:
    Image.fromarray(to_u8(image_f32)).save(path, format="PNG")


def load_png(path: str) -> np.ndarray:
    with Image.open(path) as im:
        return to_float(np.asarray(im.convert("RGB")))


def _record_for(example: TrainingExample, task: str, index: int,
                rel_images: list[str]) -> dict:
    token_ids: list[int] = []
    for seg in example.condition.segments:
        if isinstance(seg, TextSegment):
            token_ids = list(seg.token_ids)
    return {
        "index": index,
        "task": task,
        "token_ids": token_ids,
        "caption": example.meta.get("caption") or example.meta.get("instruction"),
        "scene": example.meta.get("scene"),
        "source_scene": example.meta.get("source_scene"),
        "edit": example.meta.get("edit"),
        "crop_boxes": example.meta.get("crop_boxes"),
        "condition_images": rel_images[:-1],
        "target_image": rel_images[-1],
    }


def write_dataset(out_dir: str, counts: dict[str, int], global_seed: int,
                  canvas: tuple[int, int] = (64, 64), force: bool = False) -> dict:
    if os.path.isdir(out_dir) and os.listdir(out_dir) and not force:
        raise FileExistsError(
            f"output directory {out_dir!r} is not empty (use force)")
    os.makedirs(os.path.join(out_dir, "images"), exist_ok=True)
    vocab = build_vocabulary()
    manifest = {
        "global_seed": global_seed,
        "grammar_version": GRAMMAR_VERSION,
        "canvas": list(canvas),
        "counts": {},
    }
    for task in TASKS:
        n = int(counts.get(task, 0))
        if n == 0:
            continue
        records = []
        for i in range(n):
            seed = derive_seed(global_seed, task, i)
            ex = make_example(task, seed, vocab, canvas=canvas)
            rel_images = []
            for j, seg in enumerate(s for s in ex.condition.segments
                                    if isinstance(s, ImageSegment)):
                rel = f"images/{task}_{i:06d}_c{j}.png"
                save_png(os.path.join(out_dir, rel), seg.image)
                rel_images.append(rel)
            rel_t = f"images/{task}_{i:06d}_t.png"
            save_png(os.path.join(out_dir, rel_t), ex.target)
            rel_images.append(rel_t)
            records.append(_record_for(ex, task, i, rel_images))
        with open(os.path.join(out_dir, f"{task}.jsonl"), "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        manifest["counts"][task] = n
    with open(os.path.join(out_dir, MANIFEST_NAME), "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
    return manifest


@dataclass
class DatasetIndex:
    root: str
    manifest: dict
    records: dict[str, list[dict]]

    def counts(self) -> dict[str, int]:
        return {t: len(r) for t, r in self.records.items()}

    def example(self, task: str, index: int) -> TrainingExample:
        rec = self.records[task][index]
        segments: list = []
        for rel in rec["condition_images"]:
            segments.append(ImageSegment(load_png(os.path.join(self.root, rel))))
        if rec["token_ids"]:
            segments.append(TextSegment(list(rec["token_ids"])))
        elif not segments:
            raise ValueError(f"record {task}/{index} has an empty condition")
        target = load_png(os.path.join(self.root, rec["target_image"]))
        meta = {k: rec[k] for k in
                ("scene", "source_scene", "edit", "crop_boxes", "caption")
                if rec.get(k) is not None}
        return TrainingExample(
            condition=InterleavedCondition(segments), target=target,
            task=task, meta=meta)

    def scene(self, task: str, index: int) -> Scene:
        return Scene.from_json_dict(self.records[task][index]["scene"])


def load_dataset(root: str) -> DatasetIndex:
    path = os.path.join(root, MANIFEST_NAME)
    with open(path) as fh:
        manifest = json.load(fh)
    records: dict[str, list[dict]] = {}
    for task, n in manifest["counts"].items():
        with open(os.path.join(root, f"{task}.jsonl")) as fh:
            recs = [json.loads(line) for line in fh if line.strip()]
        if len(recs) != n:
            raise ValueError(f"{task}.jsonl has {len(recs)} records, "
                             f"manifest says {n}")
        records[task] = recs
    return DatasetIndex(root=root, manifest=manifest, records=records)
