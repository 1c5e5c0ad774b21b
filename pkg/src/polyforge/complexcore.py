"""Simplicial complexes, cubical complexes, and their face posets.

Vertices are integers 0..n-1.  A simplicial face is a sorted tuple of
vertex ids; a cube of dimension k is a tuple of 2^k corner ids indexed so
that bit j of the corner position gives the coordinate along axis j.
Cubes shared between neighbours are identified by their corner sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx


def _canon_face(face) -> tuple:
    t = tuple(sorted(face))
    if len(set(t)) != len(t):
        raise ValueError(f"repeated vertex in face {face}")
    return t


class SimplicialComplex:
    """A finite abstract simplicial complex given by its facets."""

    def __init__(self, num_vertices: int, facets):
        self.num_vertices = int(num_vertices)
        canon = []
        for f in facets:
            t = _canon_face(f)
            if not t:
                raise ValueError("empty facet")
            if t[0] < 0 or t[-1] >= self.num_vertices:
                raise ValueError(f"vertex id out of range in {f}")
            canon.append(t)
        canon = sorted(set(canon), key=lambda t: (len(t), t))
        kept = []
        sets = [set(t) for t in canon]
        for i, t in enumerate(canon):
            if not any(sets[i] < sets[j] for j in range(len(canon)) if j != i):
                kept.append(t)
        self.facets = tuple(sorted(kept))
        self._faces = None

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> dict:
        """All nonempty faces, keyed by dimension."""
        if self._faces is None:
            out: dict[int, set] = {}
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    out.setdefault(k - 1, set()).update(
                        itertools.combinations(f, k)
                    )
            self._faces = out
        return self._faces

    def f_vector(self) -> tuple:
        fv = self.faces()
        return tuple(len(fv[d]) for d in range(self.dim + 1))

    def contains_face(self, face) -> bool:
        t = _canon_face(face)
        s = set(t)
        return any(s <= set(f) for f in self.facets)

    def vertices(self) -> list:
        seen = set()
        for f in self.facets:
            seen.update(f)
        return sorted(seen)

    def link(self, face):
        """Link of a face, re-indexed to 0..m-1.

        Returns (complex, old_ids) where old_ids[i] is the original label
        of new vertex i.
        """
        t = _canon_face(face)
        if not self.contains_face(t):
            raise ValueError(f"{face} is not a face of the complex")
        s = set(t)
        residues = [tuple(v for v in f if v not in s)
                    for f in self.facets if s <= set(f)]
        residues = [r for r in residues if r]
        old_ids = sorted({v for r in residues for v in r})
        index = {v: i for i, v in enumerate(old_ids)}
        lk = SimplicialComplex(len(old_ids),
                               [tuple(index[v] for v in r) for r in residues])
        return lk, old_ids

    def star(self, face) -> "SimplicialComplex":
        """Closed star: all facets containing the face, same labels."""
        t = _canon_face(face)
        if not self.contains_face(t):
            raise ValueError(f"{face} is not a face of the complex")
        s = set(t)
        return SimplicialComplex(self.num_vertices,
                                 [f for f in self.facets if s <= set(f)])

    def delete_vertex(self, v: int) -> "SimplicialComplex":
        """All faces not containing v."""
        out = []
        for f in self.facets:
            if v in f:
                r = tuple(w for w in f if w != v)
                if r:
                    out.append(r)
            else:
                out.append(f)
        return SimplicialComplex(self.num_vertices, out)

    def dual_graph(self) -> nx.Graph:
        """Facet adjacency along shared ridges; facets are indexed
        by position in self.facets."""
        if not self.is_pure():
            raise ValueError("dual graph requires a pure complex")
        g = nx.Graph()
        g.add_nodes_from(range(len(self.facets)))
        d = self.dim
        for i, j in itertools.combinations(range(len(self.facets)), 2):
            if len(set(self.facets[i]) & set(self.facets[j])) == d:
                g.add_edge(i, j)
        return g

    def one_skeleton(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices())
        for f in self.facets:
            for a, b in itertools.combinations(f, 2):
                g.add_edge(a, b)
        return g

    def is_flag(self) -> bool:
        """True when every clique of the 1-skeleton spans a face."""
        g = self.one_skeleton()
        for clique in nx.find_cliques(g):
            if len(clique) >= 3 and not self.contains_face(tuple(clique)):
                return False
        return True

    def is_normal(self) -> bool:
        """Every star (including the whole complex) has a connected
        dual graph."""
        if not self.is_pure():
            raise ValueError("normality requires a pure complex")
        if not self.facets:
            return True
        if not nx.is_connected(self.dual_graph()):
            return False
        d = self.dim
        for fdim in range(0, d):
            for face in self.faces()[fdim]:
                s = set(face)
                members = [set(f) for f in self.facets if s <= set(f)]
                g = nx.Graph()
                g.add_nodes_from(range(len(members)))
                for i, j in itertools.combinations(range(len(members)), 2):
                    if len(members[i] & members[j]) == d:
                        g.add_edge(i, j)
                if not nx.is_connected(g):
                    return False
        return True

    def derived_subdivision(self) -> "SimplicialComplex":
        """Order complex of the face poset (barycentric subdivision).

        New vertex i corresponds to the i-th face in (dimension, lex)
        order; facets are the maximal flags, one per ordering of each
        facet's vertices.
        """
        all_faces = sorted(
            (f for fs in self.faces().values() for f in fs),
            key=lambda t: (len(t), t),
        )
        index = {f: i for i, f in enumerate(all_faces)}
        new_facets = []
        for f in self.facets:
            for perm in itertools.permutations(f):
                flag = tuple(index[tuple(sorted(perm[: k + 1]))]
                             for k in range(len(perm)))
                new_facets.append(flag)
        return SimplicialComplex(len(all_faces), new_facets)

    def stellar_subdivision(self, face) -> "SimplicialComplex":
        """Star the complex at a face: cone a new vertex over the
        boundary of its star."""
        t = _canon_face(face)
        if not self.contains_face(t):
            raise ValueError(f"{face} is not a face of the complex")
        s = set(t)
        new = self.num_vertices
        out = []
        for f in self.facets:
            if s <= set(f):
                for w in t:
                    out.append(tuple(x for x in f if x != w) + (new,))
            else:
                out.append(f)
        return SimplicialComplex(self.num_vertices + 1, out)

    def to_json(self) -> dict:
        return {"vertices": self.num_vertices,
                "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls(data["vertices"], [tuple(f) for f in data["facets"]])

    def __repr__(self):
        return f"SimplicialComplex(n={self.num_vertices}, facets={len(self.facets)}, dim={self.dim})"


def boundary_sphere(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex: a triangulated (d-1)-sphere."""
    verts = range(d + 1)
    return SimplicialComplex(d + 1, itertools.combinations(verts, d))


def simplex_complex(d: int) -> SimplicialComplex:
    """The solid d-simplex."""
    return SimplicialComplex(d + 1, [tuple(range(d + 1))])


def _cube_faces(dim: int, corners: tuple):
    """Yield (dim, corners) for every face of one cube, the face corners
    listed in bit order over the free axes."""
    axes = list(range(dim))
    for kept in range(dim + 1):
        for free in itertools.combinations(axes, kept):
            fixed = [a for a in axes if a not in free]
            for bits in itertools.product((0, 1), repeat=len(fixed)):
                sub = []
                for pattern in range(1 << kept):
                    pos = 0
                    for t, a in enumerate(free):
                        if (pattern >> t) & 1:
                            pos |= 1 << a
                    for bval, a in zip(bits, fixed):
                        if bval:
                            pos |= 1 << a
                    sub.append(corners[pos])
                yield kept, tuple(sub)


class CubicalComplex:
    """A cubical complex given by generating cubes.

    Faces are identified across cubes by their corner sets; the
    constructor rejects a corner set that appears with two different
    dimensions, which would mean the gluing is inconsistent.
    """

    def __init__(self, num_vertices: int, cubes):
        self.num_vertices = int(num_vertices)
        table = {}
        order = []
        for dim, corners in cubes:
            corners = tuple(corners)
            if len(corners) != 1 << dim:
                raise ValueError(
                    f"cube of dimension {dim} needs {1 << dim} corners, got {len(corners)}")
            if len(set(corners)) != len(corners):
                raise ValueError(f"repeated corner in cube {corners}")
            if min(corners) < 0 or max(corners) >= self.num_vertices:
                raise ValueError(f"corner id out of range in {corners}")
            key = frozenset(corners)
            if key in table:
                if table[key][0] != dim:
                    raise ValueError("corner set reused with a different dimension")
                continue
            table[key] = (dim, corners)
            order.append(key)
        self.cubes = tuple(table[k] for k in sorted(
            order, key=lambda k: (len(k), tuple(sorted(k)))))
        self._faces = None

    def faces(self) -> dict:
        """Every face of every cube, deduplicated by corner set; maps
        frozenset(corners) -> (dim, corner tuple)."""
        if self._faces is None:
            out = {}
            for dim, corners in self.cubes:
                for fdim, sub in _cube_faces(dim, corners):
                    key = frozenset(sub)
                    prev = out.get(key)
                    if prev is None:
                        out[key] = (fdim, sub)
                    elif prev[0] != fdim:
                        raise ValueError("inconsistent face identification")
            self._faces = out
        return self._faces

    @property
    def dim(self) -> int:
        return max((d for d, _ in self.cubes), default=-1)

    def f_vector(self) -> tuple:
        counts = {}
        for fdim, _ in self.faces().values():
            counts[fdim] = counts.get(fdim, 0) + 1
        return tuple(counts.get(d, 0) for d in range(self.dim + 1))

    def vertices(self) -> list:
        seen = set()
        for _, corners in self.cubes:
            seen.update(corners)
        return sorted(seen)

    def link(self, face_corners):
        """Faces of the closed star that are disjoint from the face,
        re-indexed to 0..m-1.  Returns (CubicalComplex, old_ids)."""
        key = frozenset(face_corners)
        if key not in self.faces():
            raise ValueError(f"{face_corners} is not a face")
        star_cubes = [c for c in self.cubes
                      if key <= frozenset(c[1])]
        gathered = []
        for dim, corners in star_cubes:
            for fdim, sub in _cube_faces(dim, corners):
                if key.isdisjoint(sub):
                    gathered.append((fdim, sub))
        old_ids = sorted({v for _, sub in gathered for v in sub})
        index = {v: i for i, v in enumerate(old_ids)}
        relabeled = [(d, tuple(index[v] for v in sub)) for d, sub in gathered]
        return CubicalComplex(len(old_ids), relabeled), old_ids

    def derived_subdivision(self) -> SimplicialComplex:
        """Order complex of the face poset: one vertex per face, one
        facet per flag of each maximal cube."""
        face_list = sorted(self.faces().values(),
                           key=lambda t: (t[0], tuple(sorted(t[1]))))
        index = {frozenset(c): i for i, (d, c) in enumerate(face_list)}
        new_facets = []
        for dim, corners in self.cubes:
            if dim == 0:
                new_facets.append((index[frozenset(corners)],))
                continue
            for corner_pos in range(1 << dim):
                for axis_order in itertools.permutations(range(dim)):
                    flag = []
                    for k in range(dim + 1):
                        free = axis_order[:k]
                        sub = []
                        for pattern in range(1 << k):
                            pos = corner_pos
                            for t, a in enumerate(free):
                                if (pattern >> t) & 1:
                                    pos |= 1 << a
                                else:
                                    pos &= ~(1 << a)
                            sub.append(corners[pos])
                        flag.append(index[frozenset(sub)])
                    new_facets.append(tuple(flag))
        return SimplicialComplex(len(face_list), new_facets)

    def to_json(self) -> dict:
        return {"vertices": self.num_vertices,
                "cubes": [{"dim": d, "corners": list(c)} for d, c in self.cubes]}

    @classmethod
    def from_json(cls, data: dict) -> "CubicalComplex":
        return cls(data["vertices"],
                   [(c["dim"], tuple(c["corners"])) for c in data["cubes"]])

    def __repr__(self):
        return f"CubicalComplex(n={self.num_vertices}, cubes={len(self.cubes)}, dim={self.dim})"


def solid_cube(k: int) -> CubicalComplex:
    return CubicalComplex(1 << k, [(k, tuple(range(1 << k)))])


@dataclass
class FacePoset:
    """A graded poset of cells, recorded by covering relations.

    elements[i] is an arbitrary hashable key, dims[i] its dimension, and
    covers holds pairs (i, j) meaning element i is covered by element j.
    """

    elements: list
    dims: list
    covers: set

    def __post_init__(self):
        if len(self.elements) != len(self.dims):
            raise ValueError("elements and dims must align")
        n = len(self.elements)
        present = set()
        for (i, j) in self.covers:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("cover index out of range")
            if self.dims[j] != self.dims[i] + 1:
                raise ValueError(
                    f"cover {self.elements[i]} < {self.elements[j]} skips a dimension")
            present.add(j)
        for i, d in enumerate(self.dims):
            if d > 0 and i not in present:
                raise ValueError(
                    f"element {self.elements[i]} of dimension {d} covers nothing")

    def size(self) -> int:
        return len(self.elements)

    @classmethod
    def from_simplicial(cls, c: SimplicialComplex) -> "FacePoset":
        faces = sorted((f for fs in c.faces().values() for f in fs),
                       key=lambda t: (len(t), t))
        index = {f: i for i, f in enumerate(faces)}
        covers = set()
        for f in faces:
            if len(f) >= 2:
                for v in f:
                    covers.add((index[tuple(x for x in f if x != v)], index[f]))
        return cls(list(faces), [len(f) - 1 for f in faces], covers)

    @classmethod
    def from_cubical(cls, c: CubicalComplex) -> "FacePoset":
        face_list = sorted(c.faces().values(),
                           key=lambda t: (t[0], tuple(sorted(t[1]))))
        index = {frozenset(corners): i for i, (d, corners) in enumerate(face_list)}
        covers = set()
        for dim, corners in c.faces().values():
            if dim == 0:
                continue
            i_self = index[frozenset(corners)]
            for fdim, sub in _cube_faces(dim, corners):
                if fdim == dim - 1:
                    covers.add((index[frozenset(sub)], i_self))
        elements = [tuple(sorted(corners)) for d, corners in face_list]
        return cls(elements, [d for d, _ in face_list], covers)

    def hasse_digraph(self) -> nx.DiGraph:
        """Edges point from a face down to each face it covers."""
        g = nx.DiGraph()
        g.add_nodes_from(range(self.size()))
        for (i, j) in self.covers:
            g.add_edge(j, i)
        return g

    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d in self.dims)
