"""Convex hulls of projected vertex clouds and their intrinsic measures.

3D hulls are built with Qhull and post-processed: coplanar triangles are
merged back into polygonal faces (shadows of the 4-cube are zonotopes, so
generic faces are parallelograms), edges are recovered with their two
adjacent faces, and volume / surface area / mean width are extracted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

COPLANAR_TOL = 1e-9   # relative to cloud diameter
DEDUP_TOL = 1e-12


class FlatInputError(ValueError):
    """Input point cloud is not full-dimensional."""

    def __init__(self, affine_rank: int, message: str | None = None):
        self.affine_rank = affine_rank
        super().__init__(message or f"flat input, affine rank {affine_rank}")


@dataclass(frozen=True)
class PolyMesh:
    """Closed convex polyhedral surface.

    faces are outward-oriented vertex-index loops; edges are
    (v0, v1, face_a, face_b) with v0 < v1.
    """

    vertices: np.ndarray
    faces: list
    edges: list
    face_normals: np.ndarray

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count


@dataclass(frozen=True)
class MeshMeasures:
    volume: float
    area: float
    mean_width: float
    vertex_count: int
    edge_count: int
    face_count: int


@dataclass(frozen=True)
class Polygon2D:
    """Strictly convex polygon, vertices in counterclockwise order."""

    vertices: np.ndarray


def _dedup(points: np.ndarray, tol: float) -> np.ndarray:
    kept: list = []
    for p in points:
        if not any(np.linalg.norm(p - q) <= tol for q in kept):
            kept.append(p)
    return np.array(kept)


def _affine_rank(points: np.ndarray, tol: float = 1e-9) -> int:
    centered = points - points.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    scale = s[0] if len(s) and s[0] > 0 else 1.0
    return int(np.sum(s > tol * scale))


def convex_hull_3d(points) -> PolyMesh:
    """Convex hull of a 3D point cloud as a coplanar-merged polygonal mesh.

    Raises FlatInputError when the deduplicated cloud is not
    full-dimensional (degenerate projection direction upstream).
    """
    pts = np.asarray(points, dtype=float)
    pts = _dedup(pts, DEDUP_TOL)
    if len(pts) < 4:
        raise FlatInputError(_affine_rank(pts))
    rank = _affine_rank(pts)
    if rank < 3:
        raise FlatInputError(rank)
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:  # pragma: no cover - rank check catches first
        raise FlatInputError(rank, str(exc)) from exc

    diameter = float(np.max(np.linalg.norm(pts - pts[0], axis=1))) or 1.0

    # Group hull simplices by their (outward) plane equation.
    groups: list[dict] = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        for g in groups:
            if (np.dot(g["normal"], eq[:3]) > 1.0 - COPLANAR_TOL
                    and abs(g["offset"] - eq[3]) <= COPLANAR_TOL * diameter):
                g["verts"].update(simplex)
                break
        else:
            groups.append({"normal": eq[:3].copy(), "offset": eq[3],
                           "verts": set(simplex)})

    used = sorted({v for g in groups for v in g["verts"]})
    remap = {old: new for new, old in enumerate(used)}
    vertices = pts[used]

    faces = []
    normals = []
    for g in groups:
        normal = g["normal"] / np.linalg.norm(g["normal"])
        idx = np.array(sorted(remap[v] for v in g["verts"]))
        face_pts = vertices[idx]
        center = face_pts.mean(axis=0)
        # in-plane basis
        b1 = face_pts[1] - face_pts[0]
        b1 -= np.dot(b1, normal) * normal
        b1 /= np.linalg.norm(b1)
        b2 = np.cross(normal, b1)
        ang = np.arctan2((face_pts - center) @ b2, (face_pts - center) @ b1)
        order = idx[np.argsort(ang)]
        faces.append([int(i) for i in order])
        normals.append(normal)
    face_normals = np.array(normals)

    edge_faces: dict = {}
    for fi, face in enumerate(faces):
        for a, b in zip(face, face[1:] + face[:1]):
            key = (min(a, b), max(a, b))
            edge_faces.setdefault(key, []).append(fi)
    edges = []
    for (a, b), fs in sorted(edge_faces.items()):
        if len(fs) != 2:
            raise FlatInputError(rank, f"edge ({a},{b}) borders {len(fs)} faces")
        edges.append((a, b, fs[0], fs[1]))

    return PolyMesh(vertices=vertices, faces=faces, edges=edges,
                    face_normals=face_normals)


def mesh_measures(mesh: PolyMesh) -> MeshMeasures:
    """Volume, surface area and mean width of a convex PolyMesh.

    Volume: signed tetrahedra fanned from the centroid.  Area: summed
    polygon areas.  Mean width: sum over edges of length times the angle
    between the adjacent outward face normals, divided by 4*pi (exact for
    convex polytopes; the unit cube gives 3/2).
    """
    verts = mesh.vertices
    centroid = verts.mean(axis=0)

    volume = 0.0
    area = 0.0
    for face in mesh.faces:
        p0 = verts[face[0]]
        for a, b in zip(face[1:-1], face[2:]):
            cross = np.cross(verts[a] - p0, verts[b] - p0)
            area += 0.5 * np.linalg.norm(cross)
            volume += abs(np.dot(np.cross(verts[a] - centroid, verts[b] - centroid),
                                 p0 - centroid)) / 6.0

    mw = 0.0
    for a, b, fa, fb in mesh.edges:
        length = np.linalg.norm(verts[a] - verts[b])
        cosang = float(np.clip(np.dot(mesh.face_normals[fa],
                                      mesh.face_normals[fb]), -1.0, 1.0))
        mw += length * math.acos(cosang)
    mw /= 4.0 * math.pi

    return MeshMeasures(volume=volume, area=area, mean_width=mw,
                        vertex_count=mesh.vertex_count,
                        edge_count=mesh.edge_count,
                        face_count=mesh.face_count)


def convex_hull_2d(points) -> Polygon2D:
    """Convex hull of a planar point cloud as a CCW polygon."""
    pts = np.asarray(points, dtype=float)
    pts = _dedup(pts, DEDUP_TOL)
    if len(pts) < 3:
        raise FlatInputError(_affine_rank(pts))
    rank = _affine_rank(pts)
    if rank < 2:
        raise FlatInputError(rank)
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:  # pragma: no cover
        raise FlatInputError(rank, str(exc)) from exc
    return Polygon2D(vertices=pts[hull.vertices])  # already CCW


def polygon_measures(poly: Polygon2D) -> tuple[float, float]:
    """(area, perimeter) of a convex polygon by shoelace and edge sum."""
    v = poly.vertices
    nxt = np.roll(v, -1, axis=0)
    area = 0.5 * abs(np.sum(v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]))
    perimeter = float(np.sum(np.linalg.norm(nxt - v, axis=1)))
    return float(area), perimeter


def to_off(mesh: PolyMesh) -> str:
    """OFF-format text dump of a PolyMesh for external viewers."""
    lines = ["OFF", f"{mesh.vertex_count} {mesh.face_count} {mesh.edge_count}"]
    for v in mesh.vertices:
        lines.append(f"{v[0]:.17g} {v[1]:.17g} {v[2]:.17g}")
    for face in mesh.faces:
        lines.append(" ".join([str(len(face))] + [str(i) for i in face]))
    return "\n".join(lines) + "\n"
