from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

TESTS_DIR = Path(__file__).resolve().parent
TOY_DIR = TESTS_DIR / "fixtures" / "toy"
CONFORMANCE_DIR = TESTS_DIR.parent / "fixtures" / "conformance"


@pytest.fixture
def toy_dir() -> Path:
    return TOY_DIR


def random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def solid_image(rgb: tuple[int, int, int], width: int = 16, height: int = 12) -> np.ndarray:
    img = np.zeros((height, width, 3), dtype=np.uint8)
    img[:, :] = rgb
    return img
