"""
Unit tests for section covers and directed topological complexity.
"""

import itertools

import pytest

from dtopo.core.builders import boundary_cube, circle, cube, letter_w, point, swiss_grid
from dtopo.core.complex import relabel
from dtopo.core.homotopy import HomotopyAnalyzer
from dtopo.core.maps import AdmissibleMap
from dtopo.core.paths import class_table
from dtopo.core.tc import Patch, SectionCover, directed_tc, extension_constraints, invariance_check, patch_consistent
from dtopo.errors import BoundedModeError, CertificateError, CoverError, LoopError, ParameterError


class TestDirectedTc:
    """Test cases for the least section cover."""

    def test_hollow_square_needs_two_patches(self):
        """Test that the two sides of the hole cannot share a patch."""
        cover = directed_tc(boundary_cube(2))
        assert cover.k == 2
        assert cover.is_valid()

    def test_contractible_complexes(self):
        """Test one patch for the point, the full square and the W."""
        for X in (point(), cube(2), letter_w()):
            assert directed_tc(X).k == 1, X.name

    def test_hollow_cube_3(self):
        """Test that the hollow 3-cube needs one patch once all trace sets are connected."""
        assert directed_tc(boundary_cube(3)).k == 1

    def test_swiss_grid(self):
        """Test two patches around the hole of the grid."""
        assert directed_tc(swiss_grid()).k == 2

    def test_max_k_bound(self):
        """Test CoverError below the true value and bad bounds."""
        with pytest.raises(CoverError) as excinfo:
            directed_tc(boundary_cube(2), max_k=1)
        assert excinfo.value.max_k == 1
        with pytest.raises(ParameterError):
            directed_tc(point(), max_k=0)

    def test_loops_are_refused(self):
        """Test that covers need an exhaustive table."""
        with pytest.raises((LoopError, BoundedModeError)):
            directed_tc(circle())
        with pytest.raises(BoundedModeError):
            directed_tc(circle(), table=class_table(circle(), max_len=2))

    def test_relabelling_keeps_dtc(self):
        """Test the same patch count after renaming vertices and edges."""
        for X in (boundary_cube(2), boundary_cube(3), letter_w()):
            ids = sorted(X.vertices) + sorted(X.edges)
            renamed = {c: f"x{len(ids) - i:03d}" for i, c in enumerate(ids)}
            Y = relabel(X, renamed, name=f"{X.name}-renamed")
            assert directed_tc(Y).k == directed_tc(X).k, X.name

    def test_cover_is_deterministic(self):
        """Test identical witness covers on repeated runs."""
        first = directed_tc(boundary_cube(2)).to_report()
        second = directed_tc(boundary_cube(2)).to_report()
        assert first == second


class TestPatches:
    """Test cases for patch consistency."""

    def setup_method(self):
        """Set up test fixtures."""
        self.X = boundary_cube(2)
        self.table = class_table(self.X)

    def test_constraints_force_both_sides(self):
        """Test that the two lower corners force different classes at (00, 11)."""
        forced = {
            (source, target): mapping
            for source, target, mapping in extension_constraints(self.X, self.table)
        }
        assert forced[(("00", "10"), ("00", "11"))] == {0: 0}
        assert forced[(("00", "01"), ("00", "11"))] == {0: 1}

    def test_inconsistent_patch(self):
        """Test a patch holding both lower corners and the diagonal."""
        patch = Patch(0, {("00", "10"): 0, ("00", "01"): 0, ("00", "11"): 0})
        assert not patch_consistent(self.X, patch, self.table)
        assert patch_consistent(self.X, Patch(0, {("00", "10"): 0, ("00", "11"): 0}), self.table)

    def test_sub_patches_stay_consistent(self):
        """Test that every subset of a witness patch is consistent."""
        cover = directed_tc(self.X, table=self.table)
        for patch in cover.patches:
            pairs = patch.pairs
            for size in range(len(pairs) + 1):
                for chosen in itertools.combinations(pairs, size):
                    sub = Patch(patch.label, {p: patch.assignment[p] for p in chosen})
                    assert patch_consistent(self.X, sub, self.table), chosen

    def test_sub_patches_of_the_swiss_grid(self):
        """Test that dropping any one pair from a grid patch keeps it consistent."""
        X = swiss_grid()
        table = class_table(X)
        for patch in directed_tc(X, table=table).patches:
            for dropped in patch.pairs:
                sub = Patch(patch.label, {p: c for p, c in patch.assignment.items() if p != dropped})
                assert patch_consistent(X, sub, table), dropped

    def test_unknown_class(self):
        """Test that class ids are checked."""
        with pytest.raises(ParameterError):
            patch_consistent(self.X, Patch(0, {("00", "11"): 5}), self.table)

    def test_overlapping_cover_is_invalid(self):
        """Test that covers must be disjoint."""
        everything = {p: 0 for p in self.table.pairs}
        cover = SectionCover(self.X, [Patch(0, dict(everything)), Patch(1, dict(everything))])
        assert not cover.is_valid(self.table)


class TestInvariance:
    """Test cases for the invariance check."""

    def test_equivalent_complexes_share_dtc(self):
        """Test the hollow square against the swiss grid."""
        X, Y = boundary_cube(2), swiss_grid()
        analyzer = HomotopyAnalyzer()
        f = AdmissibleMap(X, Y, {"00": "11", "10": "21", "01": "12", "11": "22"})
        certificate = analyzer.check_dhe(f, "0").certificate
        assert invariance_check(X, Y, certificate, analyzer=analyzer)

    def test_missing_certificate(self):
        """Test that an uncertified pair is refused."""
        with pytest.raises(CertificateError):
            invariance_check(point(), cube(2), None)


if __name__ == "__main__":
    pytest.main([__file__])
