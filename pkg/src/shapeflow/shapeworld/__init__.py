from .palette import COLORS, PALETTE, SHAPES, SIZES, palette_float
from .scene import (
    PlacementError,
    Scene,
    SceneConstraints,
    SceneObject,
    generate_scene,
    object_bbox,
    object_mask,
    render,
)
from .caption import caption, relation_between
from .vocab import Vocabulary, VocabularyError, build_vocabulary
from .tasks import (
    TrainingExample,
    make_edit_pair,
    make_i2i_example,
    make_objects_driven,
    make_t2i_example,
)
from .io import DatasetIndex, load_dataset, write_dataset

__all__ = [
    "COLORS", "PALETTE", "SHAPES", "SIZES", "palette_float",
    "PlacementError", "Scene", "SceneConstraints", "SceneObject",
    "generate_scene", "object_bbox", "object_mask", "render",
    "caption", "relation_between",
    "Vocabulary", "VocabularyError", "build_vocabulary",
    "TrainingExample", "make_t2i_example", "make_i2i_example",
    "make_edit_pair", "make_objects_driven",
    "DatasetIndex", "load_dataset", "write_dataset",
]
