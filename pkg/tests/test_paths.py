"""
Unit tests for edge paths and dihomotopy classes.
"""

import pytest
from unittest.mock import patch

from dtopo.core.builders import boundary_cube, circle, cube, dubut_d, letter_w, swiss_grid
from dtopo.core.complex import relabel
from dtopo.core.maps import AdmissibleMap, enumerate_maps, identity_map
from dtopo.core.paths import (
    ClassTable,
    class_table,
    classes,
    concat_class,
    default_table,
    enumerate_paths,
    equivalent,
    induced_class_map,
    make_path,
    swap_closure,
    swap_step,
)
from dtopo.errors import LoopError, ParameterError, PathError
from dtopo.settings import settings


class TestEdgePaths:
    """Test cases for path construction and enumeration."""

    def setup_method(self):
        """Set up test fixtures."""
        self.square = cube(2)
        self.hollow = boundary_cube(2)

    def test_enumerate_in_lexicographic_order(self):
        """Test both monotone paths through the hollow square."""
        paths = enumerate_paths(self.hollow, "00", "11")
        assert [p.edges for p in paths] == [("*0", "1*"), ("0*", "*1")]

    def test_constant_path(self):
        """Test that x -> x yields only the constant path."""
        paths = enumerate_paths(self.hollow, "10", "10")
        assert [p.edges for p in paths] == [()]

    def test_unreachable_pair(self):
        """Test that an unreachable pair has no paths."""
        assert enumerate_paths(self.hollow, "11", "00") == []

    def test_make_path_rejects_gaps(self):
        """Test that non-composable edges are refused."""
        with pytest.raises(PathError):
            make_path(self.hollow, ["*0", "*1"])
        with pytest.raises(PathError):
            make_path(self.hollow, ["nope"])

    def test_concatenation_endpoint_mismatch(self):
        """Test that then() checks endpoints."""
        first = make_path(self.hollow, ["*0"])
        second = make_path(self.hollow, ["0*"])
        with pytest.raises(PathError):
            first.then(second)

    def test_swap_step(self):
        """Test the elementary swap across the square."""
        p = make_path(self.square, ["*0", "1*"])
        q = swap_step(self.square, p, 0, "**")
        assert q.edges == ("0*", "*1")
        assert swap_step(self.square, q, 0, "**").edges == p.edges

    def test_swap_step_needs_the_square(self):
        """Test that a swap across a missing square fails."""
        p = make_path(self.hollow, ["*0", "1*"])
        with pytest.raises(PathError):
            swap_step(self.hollow, p, 0, "**")

    def test_loops_need_a_bound(self):
        """Test loop handling with and without max_len."""
        with pytest.raises(LoopError):
            enumerate_paths(circle(), "v", "v")
        paths = enumerate_paths(circle(), "v", "v", max_len=3)
        assert [len(p) for p in paths] == [0, 1, 2, 3]
        with pytest.raises(ParameterError):
            enumerate_paths(circle(), "v", "v", max_len=-1)


class TestClasses:
    """Test cases for classes and class tables."""

    def test_hollow_square_has_two_classes(self):
        """Test the two classes around the missing square."""
        found = classes(boundary_cube(2), "00", "11")
        assert len(found) == 2
        assert [c.representative.edges for c in found] == [("*0", "1*"), ("0*", "*1")]

    def test_full_square_has_one_class(self):
        """Test that the filled square joins both paths."""
        found = classes(cube(2), "00", "11")
        assert len(found) == 1
        assert len(found[0].members) == 2

    def test_hollow_square_table(self):
        """Test that every other pair of the hollow square has one class."""
        table = class_table(boundary_cube(2))
        assert table.exhaustive
        counts = {pair: table.count(*pair) for pair in table.pairs}
        assert counts.pop(("00", "11")) == 2
        assert set(counts.values()) == {1}

    def test_hollow_cubes_are_connected(self):
        """Test that higher boundary cubes have one class from bottom to top."""
        assert len(classes(boundary_cube(3), "000", "111")) == 1
        assert len(classes(boundary_cube(4), "0000", "1111")) == 1

    def test_letter_w_is_contractible(self):
        """Test single classes on every reachable pair of the letter W."""
        table = class_table(letter_w())
        assert len(table.pairs) == 9
        assert all(table.count(*p) == 1 for p in table.pairs)

    def test_dubut_d_counts(self):
        """Test that pairs of D have zero, one or two classes, and two occurs."""
        table = class_table(dubut_d())
        counts = {table.count(*p) for p in table.pairs}
        assert counts <= {1, 2}
        assert 2 in counts

    def test_swiss_grid_goes_around_the_hole(self):
        """Test two classes across the hole and one beside it."""
        table = class_table(swiss_grid())
        assert table.count("00", "33") == 2
        assert table.count("11", "22") == 2
        assert table.count("00", "30") == 1

    def test_workers_do_not_change_the_table(self):
        """Test identical tables for one and four workers."""
        X = dubut_d()
        one = ClassTable(X, workers=1)
        four = ClassTable(X, workers=4)
        assert one.pairs == four.pairs
        for pair in one.pairs:
            assert [c.representative for c in one.get(*pair)] == [c.representative for c in four.get(*pair)]

    def test_bounded_table_on_loops(self):
        """Test that bounded tables on loops are lower bounds."""
        table = class_table(circle(), max_len=2)
        assert table.mode == "bounded"
        assert table.lower_bound
        assert table.count("v", "v") == 3

    def test_default_table_uses_configured_bound(self):
        """Test that the configured max_len applies to complexes with loops."""
        with patch.object(settings, "DEFAULT_MAX_LEN", 1):
            table = default_table(circle())
        assert table.max_len == 1
        with patch.object(settings, "DEFAULT_MAX_LEN", None):
            with pytest.raises(LoopError):
                default_table(circle())


class TestClassOperations:
    """Test cases for equivalence, concatenation and induced maps."""

    def test_equivalent(self):
        """Test swap equivalence in the full and hollow squares."""
        p, q = ("*0", "1*"), ("0*", "*1")
        assert equivalent(cube(2), p, q)
        assert not equivalent(boundary_cube(2), p, q)
        assert swap_closure(cube(2), p) == {p, q}

    def test_concat_class(self):
        """Test that concatenating the lower corner gives class 0."""
        X = boundary_cube(2)
        table = class_table(X)
        first = table.get("00", "10")[0]
        second = table.get("10", "11")[0]
        assert concat_class(X, first, second, table).class_id == 0
        with pytest.raises(PathError):
            concat_class(X, second, first, table)

    def test_induced_class_map_of_identity(self):
        """Test that the identity induces the identity on classes."""
        X = boundary_cube(2)
        assert induced_class_map(identity_map(X), ("00", "11")) == {0: 0, 1: 1}

def composable_classes(table):
    """Every (c1, c2) with c1 ending where c2 starts."""
    starting = {}
    for x, y in table.pairs:
        starting.setdefault(x, []).append((x, y))
    for x, y in table.pairs:
        for pair in starting.get(y, []):
            for c1 in table.get(x, y):
                for c2 in table.get(*pair):
                    yield c1, c2


class TestClassAlgebra:
    """Test cases for concatenation and induced maps over whole class tables."""

    def test_concat_class_ignores_the_chosen_members(self):
        """Test that every pair of members gives the class of the representatives."""
        for X in (boundary_cube(2), cube(3), dubut_d()):
            table = class_table(X)
            for c1, c2 in composable_classes(table):
                expected = concat_class(X, c1, c2, table).class_id
                for m1 in c1.members:
                    for m2 in c2.members:
                        assert table.class_of(m1.then(m2)).class_id == expected, (m1, m2)

    def test_induced_maps_respect_concatenation(self):
        """Test that the class of an image concatenation is the concatenation of image classes."""
        X, Y = boundary_cube(2), swiss_grid()
        maps = [AdmissibleMap(X, Y, {"00": "11", "10": "21", "01": "12", "11": "22"})]
        maps += enumerate_maps(X, X)
        source = class_table(X)
        for f in maps:
            target = class_table(f.target)
            induced = {pair: induced_class_map(f, pair, source, target) for pair in source.pairs}
            for c1, c2 in composable_classes(source):
                x, y, z = c1.src, c1.tgt, c2.tgt
                joined = concat_class(X, c1, c2, source)
                image_first = target.get(f(x), f(y))[induced[(x, y)][c1.class_id]]
                image_second = target.get(f(y), f(z))[induced[(y, z)][c2.class_id]]
                expected = concat_class(f.target, image_first, image_second, target).class_id
                assert induced[(x, z)][joined.class_id] == expected, (f, c1, c2)

    def test_cube_path_counts(self):
        """Test n! paths from bottom to top of the n-cube, all in one class."""
        for n, count in ((2, 2), (3, 6), (4, 24)):
            X = cube(n)
            bottom, top = "0" * n, "1" * n
            assert len(enumerate_paths(X, bottom, top)) == count
            found = classes(X, bottom, top)
            assert len(found) == 1
            assert len(found[0].members) == count

    def test_class_counts_ignore_edge_order(self):
        """Test identical counts after renaming edges so their order is reversed."""
        for X in (boundary_cube(3), dubut_d(), swiss_grid()):
            edges = sorted(X.edges)
            renamed = {e: f"e{len(edges) - i:03d}" for i, e in enumerate(edges)}
            Y = relabel(X, renamed, name=f"{X.name}-reordered")
            before, after = class_table(X), class_table(Y)
            assert sorted(before.pairs) == sorted(after.pairs)
            for pair in before.pairs:
                assert before.count(*pair) == after.count(*pair), pair



if __name__ == "__main__":
    pytest.main([__file__])
