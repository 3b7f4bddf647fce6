"""
Unit tests for witnesses, inessential maps and directed homotopy equivalences.
"""

from concurrent.futures import ThreadPoolExecutor

import pytest

from dtopo.core.builders import boundary_cube, branch, letter_w, point, swiss_grid
from dtopo.core.homotopy import (
    FUTURE,
    PAST,
    DheCertificate,
    HomotopyAnalyzer,
    HomotopyWitness,
    InessentialCertificate,
    Verdict,
    WitnessChain,
    check_witness,
    find_witness,
    find_witness_chain,
    validate_certificate,
)
from dtopo.core.maps import AdmissibleMap, constant_map, enumerate_maps, identity_map
from dtopo.errors import AdmissibilityError, CertificateError, ParameterError, WitnessError


def hollow_into_swiss():
    """The corner-to-corner embedding of the hollow square around the hole."""
    X, Y = boundary_cube(2), swiss_grid()
    return AdmissibleMap(X, Y, {"00": "11", "10": "21", "01": "12", "11": "22"})


class TestWitnesses:
    """Test cases for single future and past witnesses."""

    def setup_method(self):
        """Set up test fixtures."""
        self.B = branch()
        self.identity = identity_map(self.B)
        self.origin = constant_map(self.B, self.B, "O")

    def test_past_witness_to_the_origin(self):
        """Test that the identity flows back to the origin."""
        H = find_witness(self.identity, self.origin, PAST)
        assert H is not None
        assert H.w == {"O": (), "R": ("OR",), "U": ("OU",)}
        assert check_witness(H)

    def test_no_future_witness_to_the_origin(self):
        """Test that nothing flows forward from the leaves to the origin."""
        assert find_witness(self.identity, self.origin, FUTURE) is None

    def test_wrong_endpoint_names_the_vertex(self):
        """Test that a path with the wrong endpoints raises WitnessError."""
        H = HomotopyWitness(FUTURE, self.identity, self.origin, {"O": (), "R": (), "U": ()})
        with pytest.raises(WitnessError) as excinfo:
            check_witness(H)
        assert excinfo.value.vertex == "R"

    def test_missing_vertex(self):
        """Test that every source vertex needs a path."""
        H = HomotopyWitness(PAST, self.identity, self.origin, {"O": ()})
        with pytest.raises(WitnessError):
            check_witness(H)

    def test_unnatural_witness(self):
        """Test that mismatched sides of the hole break naturality."""
        X = boundary_cube(2)
        H = HomotopyWitness(FUTURE, identity_map(X), constant_map(X, X, "11"), {
            "00": ("*0", "1*"), "10": ("1*",), "01": ("*1",), "11": (),
        })
        assert check_witness(H) is False

    def test_letter_w_has_no_witness_to_constants(self):
        """Test that no constant map of the W is one step from the identity."""
        W = letter_w()
        for c in W.vertices:
            for direction in (FUTURE, PAST):
                assert find_witness(identity_map(W), constant_map(W, W, c), direction) is None

    def test_bad_direction(self):
        """Test that the direction is checked."""
        with pytest.raises(ParameterError):
            find_witness(self.identity, self.origin, "sideways")


class TestChains:
    """Test cases for witness chains."""

    def test_zigzag_through_the_origin(self):
        """Test the two step chain from the identity to a leaf constant."""
        B = branch()
        chain = find_witness_chain(identity_map(B), constant_map(B, B, "R"), "0")
        assert chain is not None
        assert len(chain) == 2
        assert chain.directions == [PAST, FUTURE]
        assert chain.end == constant_map(B, B, "R")

    def test_single_flavour_chains(self):
        """Test that +/- chains are single witnesses."""
        B = branch()
        assert find_witness_chain(identity_map(B), constant_map(B, B, "O"), "+") is None
        assert len(find_witness_chain(identity_map(B), constant_map(B, B, "O"), "-")) == 1

    def test_parameters(self):
        """Test depth and alpha checks."""
        B = branch()
        with pytest.raises(ParameterError):
            find_witness_chain(identity_map(B), identity_map(B), "0", depth=0)
        with pytest.raises(ParameterError):
            find_witness_chain(identity_map(B), identity_map(B), "*")


class TestInessential:
    """Test cases for inessential and rather inessential endomaps."""

    def setup_method(self):
        """Set up test fixtures."""
        self.analyzer = HomotopyAnalyzer()
        self.B = branch()

    def test_every_branch_endomap_is_neutrally_inessential(self):
        """Test all eleven endomaps of the branch."""
        for f in enumerate_maps(self.B, self.B):
            result = self.analyzer.check_inessential(f, "0")
            assert result.verdict is Verdict.TRUE, repr(f)
            assert isinstance(result.certificate, InessentialCertificate)

    def test_origin_is_past_but_not_future_inessential(self):
        """Test the flavours of the constant map at the origin."""
        origin = constant_map(self.B, self.B, "O")
        assert self.analyzer.check_inessential(origin, "-")
        future = self.analyzer.check_inessential(origin, "+")
        assert future.verdict is Verdict.FALSE
        assert future.exhaustive

    def test_hollow_square_reflection(self):
        """Test that only the identity of the hollow square is inessential."""
        X = boundary_cube(2)
        verdicts = {f: self.analyzer.check_inessential(f, "0") for f in enumerate_maps(X, X)}
        assert [f for f, r in verdicts.items() if r] == [identity_map(X)]
        reflection = AdmissibleMap(X, X, {"00": "00", "01": "10", "10": "01", "11": "11"})
        assert verdicts[reflection].verdict is Verdict.FALSE
        assert verdicts[reflection].exhaustive

    def test_budget_gives_inconclusive(self):
        """Test that running out of budget is reported, not guessed."""
        result = HomotopyAnalyzer(budget=1).check_inessential(constant_map(self.B, self.B, "R"), "0")
        assert result.verdict is Verdict.INCONCLUSIVE
        assert result.explored == 2
        assert not result

    def test_depth_gives_not_found(self):
        """Test that a depth cut is reported as not found."""
        result = HomotopyAnalyzer(depth=1).check_inessential(constant_map(self.B, self.B, "R"), "0")
        assert result.verdict is Verdict.NOT_FOUND

    def test_non_endomap_is_refused(self):
        """Test that inessentiality is about endomaps."""
        f = constant_map(point(), self.B, "O")
        with pytest.raises(ParameterError):
            self.analyzer.check_inessential(f, "0")

    def test_rather_inessential(self):
        """Test the identity helper and the empty pool."""
        origin = constant_map(self.B, self.B, "O")
        result = self.analyzer.check_rather_inessential(origin, "0")
        assert result
        assert result.certificate.helper == identity_map(self.B)
        with pytest.raises(ParameterError):
            self.analyzer.check_rather_inessential(origin, "0", pool=[])

    def test_reflection_is_not_rather_inessential(self):
        """Test the exhaustive negative on the hollow square."""
        X = boundary_cube(2)
        reflection = AdmissibleMap(X, X, {"00": "00", "01": "10", "10": "01", "11": "11"})
        result = self.analyzer.check_rather_inessential(reflection, "0")
        assert result.verdict is Verdict.FALSE
        assert result.exhaustive


class TestEquivalences:
    """Test cases for directed homotopy equivalences."""

    def setup_method(self):
        """Set up test fixtures."""
        self.analyzer = HomotopyAnalyzer()

    def test_point_into_branch(self):
        """Test that the origin inclusion is a past but not a future equivalence."""
        P, B = point(), branch()
        past = self.analyzer.dhe_equivalent(P, B, "-")
        assert past.verdict is Verdict.TRUE
        assert past.certificate.map("pt") == "O"
        future = self.analyzer.dhe_equivalent(P, B, "+")
        assert future.verdict is Verdict.FALSE
        assert future.exhaustive
        assert self.analyzer.dhe_equivalent(P, B, "0")

    def test_point_into_letter_w(self):
        """Test that the W is not equivalent to a point in any flavour."""
        for alpha in ("+", "-", "0"):
            result = self.analyzer.dhe_equivalent(point(), letter_w(), alpha)
            assert result.verdict is Verdict.FALSE, alpha
            assert result.exhaustive

    def test_hollow_square_into_swiss_grid_flavours(self):
        """Test that the embedding around the hole is neither a future nor a past equivalence."""
        f = hollow_into_swiss()
        for alpha in ("+", "-"):
            result = self.analyzer.check_dhe(f, alpha)
            assert result.verdict is Verdict.FALSE
            assert result.exhaustive

    def test_hollow_square_into_swiss_grid_neutral(self):
        """Test the neutral equivalence and its certificate."""
        result = self.analyzer.check_dhe(hollow_into_swiss(), "0")
        assert result.verdict is Verdict.TRUE
        certificate = result.certificate
        assert isinstance(certificate, DheCertificate)
        assert validate_certificate(certificate, self.analyzer)

    def test_inadmissible_map(self):
        """Test that dhe needs an admissible map."""
        f = AdmissibleMap(branch(), letter_w(), {"O": "A", "R": "B", "U": "A"})
        with pytest.raises(AdmissibilityError):
            self.analyzer.check_dhe(f, "0")


class TestSharedAnalyzer:
    """Test cases for one analyzer used from several threads."""

    def test_searches_run_without_the_lock(self):
        """Test that the cache lock is free while a verdict is computed."""
        held = []

        class Recording(HomotopyAnalyzer):
            def _inessential_uncached(self, f, alpha):
                held.append(self._lock.locked())
                return super()._inessential_uncached(f, alpha)

        B = branch()
        analyzer = Recording()
        first = analyzer.check_rather_inessential(constant_map(B, B, "R"), "0")
        assert first
        assert held and not any(held)
        calls = len(held)
        assert analyzer.check_rather_inessential(constant_map(B, B, "R"), "0") is first
        assert len(held) == calls

    def test_threads_agree_with_a_serial_run(self):
        """Test verdicts of a shared analyzer against a fresh serial one."""
        maps = [f for X in (branch(), boundary_cube(2), letter_w()) for f in enumerate_maps(X, X)]
        serial = HomotopyAnalyzer()
        expected = [serial.check_inessential(f, "0").verdict for f in maps]
        shared = HomotopyAnalyzer()
        with ThreadPoolExecutor(max_workers=4) as pool:
            got = list(pool.map(lambda f: shared.check_inessential(f, "0").verdict, maps + maps))
        assert got == expected + expected


class TestCertificates:
    """Test cases for certificate re-validation."""

    def test_inessential_certificate_round_trip(self):
        """Test that a found certificate re-validates."""
        B = branch()
        result = HomotopyAnalyzer().check_inessential(constant_map(B, B, "U"), "0")
        assert validate_certificate(result.certificate)

    def test_tampered_chain(self):
        """Test that a chain ending elsewhere is refused."""
        B = branch()
        identity = identity_map(B)
        certificate = InessentialCertificate(constant_map(B, B, "R"), "0", WitnessChain([identity]))
        with pytest.raises(CertificateError):
            validate_certificate(certificate)

    def test_flavour_mismatch(self):
        """Test that a past witness cannot certify future inessentiality."""
        B = branch()
        identity, origin = identity_map(B), constant_map(B, B, "O")
        H = find_witness(identity, origin, PAST)
        certificate = InessentialCertificate(origin, "+", WitnessChain([identity, origin], [H]))
        with pytest.raises(CertificateError):
            validate_certificate(certificate)

    def test_not_a_certificate(self):
        """Test arbitrary objects."""
        with pytest.raises(CertificateError):
            validate_certificate("certainly")


if __name__ == "__main__":
    pytest.main([__file__])
