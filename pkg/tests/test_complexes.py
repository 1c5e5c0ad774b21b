"""Simplicial and cubical complex machinery.

Frozen counts below were derived by hand from first principles (chain
counting in face lattices, Euler characteristics of spheres) before the
implementation existed.
"""

import json

import pytest

from polyforge.complexcore import (
    CubicalComplex,
    FacePoset,
    SimplicialComplex,
    boundary_sphere,
    solid_cube,
)


def octahedron():
    # join of three 0-spheres {0,1}, {2,3}, {4,5}
    facets = [
        (a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)
    ]
    return SimplicialComplex(6, facets)


class TestSimplicialBasics:
    def test_canonicalization(self):
        c = SimplicialComplex(4, [(2, 1, 0), (0, 1, 2), (1, 3)])
        assert c.facets == ((0, 1, 2), (1, 3))
        assert c.dim == 2
        assert not c.is_pure()

    def test_containment_dropped(self):
        c = SimplicialComplex(4, [(0, 1, 2), (0, 1)])
        assert c.facets == ((0, 1, 2),)

    def test_bad_ids_raise(self):
        with pytest.raises(ValueError):
            SimplicialComplex(3, [(0, 3)])
        with pytest.raises(ValueError):
            SimplicialComplex(3, [(0, 0, 1)])

    def test_f_vector_boundary_of_4_simplex(self):
        c = boundary_sphere(4)
        assert c.f_vector() == (5, 10, 10, 5)
        # Euler characteristic of the 3-sphere
        assert 5 - 10 + 10 - 5 == 0

    def test_faces_of_triangle(self):
        c = SimplicialComplex(3, [(0, 1, 2)])
        faces = c.faces()
        assert faces[0] == {(0,), (1,), (2,)}
        assert faces[1] == {(0, 1), (0, 2), (1, 2)}
        assert faces[2] == {(0, 1, 2)}

    def test_contains(self):
        c = boundary_sphere(3)
        assert c.contains_face((0, 1))
        assert c.contains_face((0, 1, 2))
        assert not c.contains_face((0, 1, 2, 3))


class TestLinkStarDelete:
    def test_vertex_link_in_sphere(self):
        c = boundary_sphere(3)
        lk, old_ids = c.link((0,))
        assert old_ids == [1, 2, 3]
        assert lk.f_vector() == (3, 3)  # boundary of a triangle
        assert lk.facets == ((0, 1), (0, 2), (1, 2))

    def test_edge_link_in_sphere(self):
        c = boundary_sphere(3)
        lk, old_ids = c.link((1, 2))
        assert lk.f_vector() == (2,)
        assert old_ids == [0, 3]

    def test_link_of_missing_face_raises(self):
        c = SimplicialComplex(3, [(0, 1)])
        with pytest.raises(ValueError):
            c.link((0, 2))

    def test_star(self):
        c = SimplicialComplex(5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)])
        st = c.star((0,))
        assert st.facets == ((0, 1, 2), (0, 1, 3))

    def test_delete_vertex(self):
        c = boundary_sphere(3)
        d = c.delete_vertex(0)
        # deleting a vertex from S^2 leaves a disk: one facet missing,
        # its boundary retained
        assert d.facets == ((1, 2, 3),)
        bowtie = SimplicialComplex(5, [(0, 1, 2), (0, 3, 4)])
        d = bowtie.delete_vertex(0)
        assert d.facets == ((1, 2), (3, 4))


class TestSubdivisions:
    def test_derived_subdivision_counts(self):
        c = boundary_sphere(3)
        sd = c.derived_subdivision()
        # one vertex per face, one facet per flag: 4 * 3! = 24
        assert sd.f_vector()[0] == 4 + 6 + 4
        assert len(sd.facets) == 24
        # still a 2-sphere
        f = sd.f_vector()
        assert f[0] - f[1] + f[2] == 2

    def test_stellar_subdivision(self):
        c = boundary_sphere(3)
        s = c.stellar_subdivision((0, 1, 2))
        assert s.f_vector()[0] == 5
        assert len(s.facets) == 6
        f = s.f_vector()
        assert f[0] - f[1] + f[2] == 2
        with pytest.raises(ValueError):
            c.stellar_subdivision((0, 4))

    def test_derived_subdivision_of_solid_cube(self):
        q = solid_cube(3)
        sd = q.derived_subdivision()
        # flags of the 3-cube lattice: 8 corners * 3! axis orders
        assert len(sd.facets) == 48
        assert sd.f_vector()[0] == 8 + 12 + 6 + 1
        f = sd.f_vector()
        assert f[0] - f[1] + f[2] - f[3] == 1  # a ball


class TestDualGraphAndFlags:
    def test_dual_graph_of_sphere(self):
        g = boundary_sphere(3).dual_graph()
        assert g.number_of_nodes() == 4
        assert g.number_of_edges() == 6

    def test_dual_graph_needs_pure(self):
        c = SimplicialComplex(4, [(0, 1, 2), (2, 3)])
        with pytest.raises(ValueError):
            c.dual_graph()

    def test_flagness(self):
        assert octahedron().is_flag()
        assert not boundary_sphere(3).is_flag()  # empty tetrahedron
        cycle = SimplicialComplex(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert cycle.is_flag()

    def test_normality(self):
        assert boundary_sphere(3).is_normal()
        assert octahedron().is_normal()
        bowtie = SimplicialComplex(5, [(0, 1, 2), (0, 3, 4)])
        assert not bowtie.is_normal()


class TestSimplicialJson:
    def test_round_trip(self):
        c = octahedron()
        blob = json.dumps(c.to_json())
        c2 = SimplicialComplex.from_json(json.loads(blob))
        assert c2.facets == c.facets
        assert c2.num_vertices == c.num_vertices


class TestCubical:
    def test_solid_cube_f_vector(self):
        q = solid_cube(3)
        assert q.f_vector() == (8, 12, 6, 1)
        q2 = solid_cube(2)
        assert q2.f_vector() == (4, 4, 1)

    def test_corner_count_validation(self):
        with pytest.raises(ValueError):
            CubicalComplex(4, [(2, (0, 1, 2))])
        with pytest.raises(ValueError):
            CubicalComplex(2, [(1, (0, 0))])

    def test_shared_faces_deduplicated(self):
        # two squares glued along an edge
        c = CubicalComplex(6, [(2, (0, 1, 2, 3)), (2, (2, 3, 4, 5))])
        assert c.f_vector() == (6, 7, 2)

    def test_vertex_link_in_solid_cube(self):
        q = solid_cube(3)
        lk, old_ids = q.link((0,))
        # far squares and their faces
        assert lk.f_vector() == (7, 9, 3)
        assert 0 not in old_ids

    def test_round_trip(self):
        q = solid_cube(3)
        blob = json.dumps(q.to_json())
        q2 = CubicalComplex.from_json(json.loads(blob))
        assert q2.f_vector() == q.f_vector()


class TestFacePoset:
    def test_from_simplicial_graded(self):
        p = FacePoset.from_simplicial(boundary_sphere(3))
        assert p.size() == 4 + 6 + 4
        assert max(p.dims) == 2
        # each edge covers two vertices, each triangle covers three edges
        by_dim = {}
        for i, d in enumerate(p.dims):
            by_dim.setdefault(d, []).append(i)
        for t in by_dim[2]:
            assert sum(1 for (a, b) in p.covers if b == t) == 3

    def test_from_cubical(self):
        p = FacePoset.from_cubical(solid_cube(3))
        assert p.size() == 8 + 12 + 6 + 1
        top = p.dims.index(3)
        assert sum(1 for (a, b) in p.covers if b == top) == 6

    def test_explicit_validation(self):
        # cover skipping a dimension is rejected
        with pytest.raises(ValueError):
            FacePoset(["a", "b"], [0, 2], {(0, 1)})
