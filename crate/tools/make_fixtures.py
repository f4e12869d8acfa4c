"""Regenerates the bundled test fixtures under crates/core/fixtures/.

Textures come from scikit-image's sample data (astronaut: NASA, public
domain; coffee: CC0), downscaled to 128x128. Meshes are procedural.
"""
import math
import pathlib

import numpy as np
from PIL import Image
import skimage.data

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def write_ppm(path, arr):
    h, w, _ = arr.shape
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode())
        f.write(arr.astype(np.uint8).tobytes())


def texture(img, path, size=128):
    h, w, _ = img.shape
    side = min(h, w)
    top, left = (h - side) // 2, (w - side) // 2
    crop = Image.fromarray(img[top:top + side, left:left + side])
    write_ppm(path, np.asarray(crop.resize((size, size), Image.LANCZOS)))


def fmt(v):
    return f"{v:.6f}"


def torus(path, major=1.0, minor=0.35, nu=48, nv=24):
    lines = ["# torus, quads", "mtllib torus.mtl", "o torus"]
    for i in range(nu):
        u = 2 * math.pi * i / nu
        for j in range(nv):
            v = 2 * math.pi * j / nv
            r = major + minor * math.cos(v)
            lines.append(f"v {fmt(r * math.cos(u))} {fmt(r * math.sin(u))} {fmt(minor * math.sin(v))}")
    for i in range(nu + 1):
        for j in range(nv + 1):
            lines.append(f"vt {fmt(i / nu)} {fmt(j / nv)}")
    for i in range(nu):
        u = 2 * math.pi * i / nu
        for j in range(nv):
            v = 2 * math.pi * j / nv
            lines.append(f"vn {fmt(math.cos(v) * math.cos(u))} {fmt(math.cos(v) * math.sin(u))} {fmt(math.sin(v))}")
    lines.append("usemtl skin")
    lines.append("s 1")
    vid = lambda i, j: (i % nu) * nv + (j % nv) + 1
    tid = lambda i, j: i * (nv + 1) + j + 1
    for i in range(nu):
        for j in range(nv):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            lines.append("f " + " ".join(f"{vid(a, b)}/{tid(a, b)}/{vid(a, b)}" for a, b in corners))
    path.write_text("\n".join(lines) + "\n")


def vase(path, rings=40, segments=36):
    lines = ["# vase of revolution, triangles with capped base", "o vase"]
    heights = [k / (rings - 1) * 2.0 for k in range(rings)]
    radius = lambda t: 0.45 + 0.25 * math.sin(1.2 * math.pi * t / 2.0 + 0.3) + 0.08 * math.cos(5 * t)
    for k, y in enumerate(heights):
        r = radius(y)
        for s in range(segments):
            a = 2 * math.pi * s / segments
            lines.append(f"v {fmt(r * math.cos(a))} {fmt(y)} {fmt(r * math.sin(a))}")
    base = rings * segments + 1
    lines.append("v 0.000000 0.000000 0.000000")
    for k in range(rings):
        for s in range(segments + 1):
            lines.append(f"vt {fmt(s / segments)} {fmt(k / (rings - 1))}")
    vid = lambda k, s: k * segments + (s % segments) + 1
    tid = lambda k, s: k * (segments + 1) + s + 1
    for k in range(rings - 1):
        for s in range(segments):
            a, b, c, d = (k, s), (k, s + 1), (k + 1, s + 1), (k + 1, s)
            for tri in ((a, b, c), (a, c, d)):
                lines.append("f " + " ".join(f"{vid(*p)}/{tid(*p)}" for p in tri))
    for s in range(segments):
        lines.append(f"f {base} {vid(0, s + 1)} {vid(0, s)}")
    path.write_text("\n".join(lines) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    texture(skimage.data.astronaut(), OUT / "astronaut.ppm")
    texture(skimage.data.coffee(), OUT / "coffee.ppm")
    torus(OUT / "torus.obj")
    vase(OUT / "vase.obj")
    (OUT / "default.key").write_text(
        "vertices -6.045 2.668 16.363\n"
        "polygons -5.045 2.668 16.363\n"
        "texture1 -6.045 2.668 20.363\n"
        "texture2 -5.045 3.668 16.363\n"
    )


if __name__ == "__main__":
    main()
