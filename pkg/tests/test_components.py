"""
Unit tests for pair component categories.
"""

import itertools

import pytest

from dtopo.core.builders import boundary_cube, branch, circle, cube, dubut_d, letter_w, point, swiss_grid
from dtopo.core.components import (
    Comparison,
    classify_edges,
    compare_categories,
    induced_component_map,
    pair_components,
    to_dot,
)
from dtopo.core.homotopy import HomotopyAnalyzer
from dtopo.core.maps import AdmissibleMap, constant_map, identity_map
from dtopo.errors import BoundedModeError, CertificateError, LoopError


class TestPairComponents:
    """Test cases for the object partition."""

    def test_hollow_square_has_nine_objects(self):
        """Test that no edge of the hollow square is inessential on both sides."""
        category = pair_components(boundary_cube(2))
        assert category.objects == 9
        assert all(c.size == 1 for c in category.components)
        assert sorted(category.signatures) == [(1,)] * 8 + [(2,)]

    def test_contractible_complexes_have_one_object(self):
        """Test one object for the point, the W, the branch and the full square."""
        for X in (point(), letter_w(), branch(), cube(2)):
            assert pair_components(X).objects == 1, X.name

    def test_dubut_d_has_more_objects(self):
        """Test the regression count of objects of D."""
        assert pair_components(dubut_d()).objects == 33

    def test_components_cover_all_pairs(self):
        """Test that components partition the reachable pairs."""
        X = dubut_d()
        category = pair_components(X)
        members = [p for c in category.components for p in c.pairs]
        assert sorted(members) == sorted(X.reach.pairs)

    def test_loops_are_refused(self):
        """Test that complexes with loops cannot be analysed."""
        with pytest.raises((LoopError, BoundedModeError)):
            pair_components(circle())

    def test_edge_verdicts(self):
        """Test the one-sided verdicts of the hollow square's bottom edge."""
        X = boundary_cube(2)
        verdicts = {v.edge: v for v in classify_edges(X)}
        assert not verdicts["*0"].inessential
        assert all(v.edge in X.edges for v in verdicts.values())


class TestComparison:
    """Test cases for comparing categories."""

    def test_hollow_square_and_dubut_d_are_distinguished(self):
        """Test the object count obstruction."""
        assert compare_categories(pair_components(boundary_cube(2)),
                                  pair_components(dubut_d())) is Comparison.DISTINGUISHED

    def test_hollow_square_and_swiss_grid_are_compatible(self):
        """Test equal object counts and signatures."""
        assert compare_categories(pair_components(boundary_cube(2)),
                                  pair_components(swiss_grid())) is Comparison.COMPATIBLE

    def test_necessary_not_sufficient(self):
        """Test that the W matches the point although it is no equivalence."""
        assert compare_categories(pair_components(point()),
                                  pair_components(letter_w())) is Comparison.COMPATIBLE
        assert not HomotopyAnalyzer().dhe_equivalent(point(), letter_w(), "0")


class TestCertifiedMerges:
    """Test cases for merging along certified endomaps."""

    def setup_method(self):
        """Set up test fixtures."""
        self.analyzer = HomotopyAnalyzer()

    def test_merge_needs_a_certificate(self):
        """Test that a bare map is refused."""
        B = branch()
        with pytest.raises(CertificateError):
            pair_components(B, [constant_map(B, B, "O")])

    def test_certified_merge(self):
        """Test that a certified merge is recorded and keeps one object."""
        B = branch()
        result = self.analyzer.check_inessential(constant_map(B, B, "O"), "0")
        category = pair_components(B, [result.certificate], analyzer=self.analyzer)
        assert category.objects == 1
        assert len(category.merges) == 1

    def test_merge_order_does_not_matter(self):
        """Test identical components for every order of the same certified merges."""
        B = branch()
        certificates = [
            self.analyzer.check_inessential(constant_map(B, B, v), "0").certificate for v in ("O", "R", "U")
        ]
        baseline = pair_components(B, certificates, analyzer=self.analyzer)
        for order in itertools.permutations(certificates):
            category = pair_components(B, list(order), analyzer=self.analyzer)
            assert [c.pairs for c in category.components] == [c.pairs for c in baseline.components]
            assert category.component_of == baseline.component_of
            assert sorted(category.merges) == sorted(baseline.merges)

    def test_merges_on_the_hollow_square(self):
        """Test that merging along the identity keeps the nine objects in any order."""
        X = boundary_cube(2)
        identity = self.analyzer.check_inessential(identity_map(X), "0").certificate
        once = pair_components(X, [identity], analyzer=self.analyzer)
        twice = pair_components(X, [identity, identity], analyzer=self.analyzer)
        assert once.objects == twice.objects == 9
        assert once.component_of == twice.component_of

    def test_induced_map_needs_equivalence_certificate(self):
        """Test the missing certificate path."""
        with pytest.raises(CertificateError):
            induced_component_map(None)

    def test_induced_map_of_the_hollow_square_embedding(self):
        """Test that the equivalence into the swiss grid is defined on every component."""
        X, Y = boundary_cube(2), swiss_grid()
        f = AdmissibleMap(X, Y, {"00": "11", "10": "21", "01": "12", "11": "22"})
        result = self.analyzer.check_dhe(f, "0")
        induced = induced_component_map(result.certificate, analyzer=self.analyzer)
        assert sorted(induced.mapping) == list(range(9))
        assert induced.bijective

    def test_induced_map_of_the_origin_inclusion(self):
        """Test the single component of the point onto the single component of the branch."""
        result = self.analyzer.dhe_equivalent(point(), branch(), "0")
        induced = induced_component_map(result.certificate, analyzer=self.analyzer)
        assert induced.mapping == {0: 0}
        assert induced.bijective


class TestDot:
    """Test cases for DOT export."""

    def test_dot_lists_every_component(self):
        """Test one node per component."""
        category = pair_components(boundary_cube(2))
        dot = to_dot(category)
        assert dot.startswith('digraph "boundary-cube-2" {')
        assert dot.count("[label=") == 9
        assert dot.rstrip().endswith("}")


if __name__ == "__main__":
    pytest.main([__file__])
