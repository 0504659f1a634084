"""Write skeleton fixtures for small convex polytopes given by coordinates.

Faces come from the convex hull with coplanar triangles merged; the rotation
system at each vertex orders its neighbours by angle around the outward
direction, so face tracing in the library recovers the same faces.
"""
import itertools
import json
import math
import sys

import numpy as np
from scipy.spatial import ConvexHull


def hull_graph(points):
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    planes = {}
    for simplex, eq in zip(hull.simplices, hull.equations):
        key = tuple(np.round(eq, 6))
        planes.setdefault(key, set()).update(int(i) for i in simplex)
    edges = set()
    for verts in planes.values():
        verts = sorted(verts)
        for a, b in itertools.combinations(verts, 2):
            mid = (pts[a] + pts[b]) / 2
            # an edge of the polytope lies on two supporting planes
            count = sum(1 for key in planes if abs(np.dot(key[:3], mid) + key[3]) < 1e-6)
            if count >= 2:
                edges.add((a, b))
    centre = pts.mean(axis=0)
    rotation = {}
    for v in range(len(pts)):
        nbrs = [b if a == v else a for a, b in edges if v in (a, b)]
        normal = pts[v] - centre
        normal /= np.linalg.norm(normal)
        ref = pts[nbrs[0]] - pts[v]
        ref -= np.dot(ref, normal) * normal
        ref /= np.linalg.norm(ref)
        other = np.cross(normal, ref)

        def angle(w):
            d = pts[w] - pts[v]
            return math.atan2(np.dot(d, other), np.dot(d, ref)) % (2 * math.pi)

        rotation[v] = sorted(nbrs, key=angle)
    return sorted(edges), rotation


def fixture(name, points, comment):
    edges, rotation = hull_graph(points)
    return {
        "comment": comment,
        "vertices": list(range(len(points))),
        "edges": [list(e) for e in edges],
        "embedding": {str(v): rotation[v] for v in sorted(rotation)},
    }


def dodecahedron():
    phi = (1 + 5 ** 0.5) / 2
    pts = [p for p in itertools.product((-1, 1), repeat=3)]
    for a, b in itertools.product((-1, 1), repeat=2):
        pts += [(0, a / phi, b * phi), (a / phi, b * phi, 0), (a * phi, 0, b / phi)]
    return pts


SOLIDS = {
    "tetrahedron": ([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], "regular tetrahedron"),
    "cube": (list(itertools.product((-1, 1), repeat=3)), "cube"),
    "octahedron": ([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], "octahedron"),
    "dodecahedron": (dodecahedron(), "regular dodecahedron"),
}

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "data/fixtures"
    for name, (pts, comment) in SOLIDS.items():
        data = fixture(name, pts, comment + "; faces traced from the rotation system")
        with open(f"{out}/{name}.json", "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
