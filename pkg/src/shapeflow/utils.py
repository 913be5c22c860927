"""Seeding and hashing helpers shared across the package."""

from __future__ import annotations

import hashlib

import torch

MASK63 = (1 << 63) - 1


def derive_seed(*parts) -> int:
    """Stable 63-bit seed derived from an arbitrary tuple of parts.

    Independent of process hash randomization, so any parallel or resumed
    schedule regenerates identical streams.
    """
    key = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & MASK63


def generator_from(*parts) -> torch.Generator:
    g = torch.Generator()
    g.manual_seed(derive_seed(*parts))
    return g


def param_hash(named_tensors) -> str:
    """SHA-256 over name-sorted raw parameter bytes."""
    h = hashlib.sha256()
    for name, tensor in sorted(named_tensors, key=lambda kv: kv[0]):
        h.update(name.encode("utf-8"))
        h.update(tensor.detach().cpu().contiguous().numpy().tobytes())
    return h.hexdigest()


def module_param_hash(module: torch.nn.Module, prefix: str = "") -> str:
    return param_hash((prefix + n, p) for n, p in module.named_parameters())


def set_single_threaded() -> None:
    """Force single-threaded execution for bit-exact reproducibility runs."""
    torch.set_num_threads(1)
