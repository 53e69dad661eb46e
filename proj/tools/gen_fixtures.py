#!/usr/bin/env python3
# Copyright 2026 The soapcert Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS-IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the graph documents under tests/data."""

import argparse
import json
import math
import pathlib

import numpy as np


def circle(n, radius=1.0):
    pts = [[radius * math.cos(2 * math.pi * i / n),
            radius * math.sin(2 * math.pi * i / n), 0.0] for i in range(n)]
    pts.append(pts[0])
    return {
        "space": {"model": "flat", "dim": 3, "curv": 0},
        "vertices": [{"id": "q", "coords": pts[0]}],
        "edges": [{"id": "c", "endpoints": ["q", "q"], "samples": pts}],
    }


def segment(a, b, n):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return [list(a + (b - a) * t) for t in np.linspace(0.0, 1.0, n + 1)]


def polygon_flat(corners, n, ids):
    edges = []
    for k in range(len(corners)):
        j = (k + 1) % len(corners)
        edges.append({"id": f"e{k}", "endpoints": [ids[k], ids[j]],
                      "samples": segment(corners[k], corners[j], n)})
    return {
        "space": {"model": "flat", "dim": 3, "curv": 0},
        "vertices": [{"id": i, "coords": list(map(float, c))}
                     for i, c in zip(ids, corners)],
        "edges": edges,
    }


def cube(n):
    corners = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    ids = [f"v{x}{y}{z}" for x, y, z in corners]
    edges = []
    for a in range(8):
        for b in range(a + 1, 8):
            if sum(abs(p - q) for p, q in zip(corners[a], corners[b])) == 1:
                edges.append({"id": f"{ids[a]}-{ids[b]}",
                              "endpoints": [ids[a], ids[b]],
                              "samples": segment(corners[a], corners[b], n)})
    return {
        "space": {"model": "flat", "dim": 3, "curv": 0},
        "vertices": [{"id": i, "coords": list(map(float, c))}
                     for i, c in zip(ids, corners)],
        "edges": edges,
    }


def theta(n):
    edges = []
    for k in range(3):
        phi = 2 * math.pi * k / 3
        pts = []
        for i in range(n + 1):
            t = math.pi * i / n
            pts.append([math.sin(t) * math.cos(phi),
                        math.sin(t) * math.sin(phi), math.cos(t)])
        edges.append({"id": f"arc{k}", "endpoints": ["north", "south"],
                      "samples": pts})
    return {
        "space": {"model": "flat", "dim": 3, "curv": 0},
        "vertices": [{"id": "north", "coords": [0.0, 0.0, 1.0]},
                     {"id": "south", "coords": [0.0, 0.0, -1.0]}],
        "edges": edges,
    }


def hyperbolic_circle(n, kappa=1.0, radius=1.0):
    ch = math.cosh(kappa * radius) / kappa
    sh = math.sinh(kappa * radius) / kappa
    pts = [[ch, sh * math.cos(2 * math.pi * i / n),
            sh * math.sin(2 * math.pi * i / n), 0.0] for i in range(n)]
    pts.append(pts[0])
    return {
        "space": {"model": "hyperbolic", "dim": 3, "curv": kappa},
        "vertices": [{"id": "q", "coords": pts[0]}],
        "edges": [{"id": "c", "endpoints": ["q", "q"], "samples": pts}],
    }


def spherical_circle(n, b=1.0, radius=math.pi / 4):
    c = math.cos(b * radius) / b
    s = math.sin(b * radius) / b
    pts = [[c, s * math.cos(2 * math.pi * i / n),
            s * math.sin(2 * math.pi * i / n), 0.0] for i in range(n)]
    pts.append(pts[0])
    return {
        "space": {"model": "spherical", "dim": 3, "curv": b},
        "vertices": [{"id": "q", "coords": pts[0]}],
        "edges": [{"id": "c", "endpoints": ["q", "q"], "samples": pts}],
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(
        pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    square = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]
    docs = {
        "circle": circle(1024),
        "square": polygon_flat(square, 16, ["a", "b", "c", "d"]),
        "cube": cube(16),
        "theta": theta(256),
        "hyperbolic_circle": hyperbolic_circle(1024),
        "spherical_circle": spherical_circle(1024),
    }
    for name, doc in docs.items():
        path = out / f"{name}.graph.json"
        path.write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
