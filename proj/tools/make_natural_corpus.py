#!/usr/bin/env python3
"""Regenerate tests/data/natural/*.pgm from scikit-image's bundled sample images."""
import pathlib
import sys

import numpy as np
import skimage.color
import skimage.data

NAMES = ["camera", "coins", "moon", "page", "text", "astronaut", "coffee",
         "chelsea", "rocket", "clock", "cell", "brick"]


def to_gray8(img):
    if img.ndim == 3:
        img = skimage.color.rgb2gray(img[..., :3])
        return np.clip(np.rint(img * 255.0), 0, 255).astype(np.uint8)
    return img.astype(np.uint8)


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in NAMES:
        img = to_gray8(getattr(skimage.data, name)())
        h, w = img.shape
        with open(out / f"{name}.pgm", "wb") as f:
            f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
            f.write(img.tobytes())


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/natural")
