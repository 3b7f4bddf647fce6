"""
Tests for the command-line front-end.
"""

import json
import os
import shutil
import tempfile

import pytest

from dtopo.cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main
from dtopo.core.builders import boundary_cube
from dtopo.core.maps import identity_map
from dtopo.core.serialization import save_complex, save_map


class TestCli:
    """Test cases for the dtopo commands."""

    def setup_method(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """Clean up test fixtures."""
        shutil.rmtree(self.temp_dir)

    def _path(self, name):
        return os.path.join(self.temp_dir, name)

    def test_gen_writes_a_complex(self, capsys):
        """Test writing a named complex to a file."""
        out = self._path("square.json")
        assert main(["gen", "boundary-cube", "2", "--out", out]) == EXIT_OK
        assert "(8 cells)" in capsys.readouterr().out
        with open(out, encoding="utf-8") as f:
            data = json.load(f)
        assert len(data["cells"]) == 8

    def test_gen_lists_builders(self, capsys):
        """Test the builder listing."""
        assert main(["gen"]) == EXIT_OK
        names = [line.split()[0] for line in capsys.readouterr().out.splitlines()]
        assert "boundary-cube" in names
        assert "swiss-grid" in names

    def test_pi0_single_pair(self, capsys):
        """Test the two classes across the hollow square."""
        assert main(["pi0", "boundary-cube:2", "--from", "00", "--to", "11"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "00 11 2 [*0,1* | 0*,*1]"

    def test_pi0_all_pairs(self, capsys):
        """Test one class per reachable pair of the W."""
        assert main(["pi0", "letter-w", "--all-pairs"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 9
        assert all(line.split()[2] == "1" for line in lines)

    def test_pi0_errors(self, capsys):
        """Test loops without a bound, missing endpoints and unknown vertices."""
        assert main(["pi0", "circle", "--from", "v", "--to", "v"]) == EXIT_ERROR
        assert main(["pi0", "letter-w", "--from", "A"]) == EXIT_ERROR
        assert main(["pi0", "letter-w", "--from", "A", "--to", "Z"]) == EXIT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_pi0_bounded_circle(self, capsys):
        """Test that bounded counts are flagged as lower bounds."""
        assert main(["pi0", "circle", "--from", "v", "--to", "v", "--max-len", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("v v 3 ")
        assert "# counts are lower bounds (max_len=2)" in out

    def test_validate(self, capsys):
        """Test valid, unknown and malformed inputs."""
        good = self._path("good.json")
        save_complex(boundary_cube(2), good)
        assert main(["validate", good]) == EXIT_OK
        assert capsys.readouterr().out.startswith("valid: ")

        bad = self._path("bad.json")
        with open(bad, "w", encoding="utf-8") as f:
            f.write("{\"cells\": [{\"id\": \"e\", \"dim\": 1, \"faces\": {\"1\": {\"-\": \"a\"}}}]}")
        assert main(["validate", bad]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.startswith("invalid: ")

        broken = self._path("broken.json")
        with open(broken, "w", encoding="utf-8") as f:
            f.write("not json")
        assert main(["validate", broken]) == EXIT_ERROR

    def test_components_and_dtc(self, capsys):
        """Test the component count and the dtc of the hollow square."""
        assert main(["components", "boundary-cube:2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "objects: 9"
        assert any(line.endswith(": (00,11)") for line in lines)
        assert main(["dtc", "boundary-cube:2"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "dtc=2"

    def test_dtc_bound(self, capsys):
        """Test that a too small patch bound is a negative result."""
        assert main(["dtc", "boundary-cube:2", "--max-k", "1"]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.strip() == "dtc>1"

    def test_components_dot(self, capsys):
        """Test the DOT side output."""
        dot = self._path("square.dot")
        assert main(["components", "boundary-cube:2", "--dot", dot]) == EXIT_OK
        with open(dot, encoding="utf-8") as f:
            assert f.read().startswith("digraph ")

    def test_dhe_negative(self, capsys):
        """Test that the W is not equivalent to a point."""
        assert main(["analyze", "dhe", "point", "letter-w"]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.splitlines()[0] == "dhe(0): false (exhaustive)"

    def test_psp_of_identity(self, capsys):
        """Test psp on a saved identity map."""
        X = boundary_cube(2)
        path = self._path("id.json")
        save_map(identity_map(X), path)
        assert main(["analyze", "psp", "boundary-cube:2", "boundary-cube:2", path]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "psp: true"

    def test_certificates_revalidate(self, capsys):
        """Test that an emitted certificate directory validates again."""
        directory = self._path("cert")
        assert main(["analyze", "dhe", "point", "branch", "--alpha=-", "--certificates", directory]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("dhe(-): true")
        assert "certificate: " in out
        assert main(["analyze", "certificate", directory, "point", "branch"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "certificate: true"

    def test_structured_output(self, capsys):
        """Test that structured output is JSON."""
        assert main(["pi0", "boundary-cube:2", "--all-pairs", "--format", "structured"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["mode"] == "exhaustive"
        assert len(report["pairs"]) == 9

    def test_repeated_runs_print_the_same(self, capsys):
        """Test byte-identical output over three runs of each command."""
        for argv in (["pi0", "dubut-d", "--all-pairs"], ["components", "dubut-d"],
                     ["dtc", "boundary-cube:2"], ["analyze", "dhe", "boundary-cube:2", "swiss-grid"]):
            outputs = []
            for _ in range(3):
                assert main(argv) == EXIT_OK, argv
                outputs.append(capsys.readouterr().out)
            assert outputs[0]
            assert outputs[1] == outputs[0], argv
            assert outputs[2] == outputs[0], argv

    def test_worker_count_does_not_change_output(self, capsys):
        """Test identical output for one and four worker threads."""
        for argv in (["pi0", "swiss-grid", "--all-pairs", "--format", "structured"],
                     ["components", "dubut-d"], ["dtc", "swiss-grid"]):
            assert main(argv + ["--workers", "1"]) == EXIT_OK, argv
            one = capsys.readouterr().out
            assert main(argv + ["--workers", "4"]) == EXIT_OK, argv
            four = capsys.readouterr().out
            assert one == four, argv

    def test_bad_options(self):
        """Test usage errors."""
        assert main(["dtc", "boundary-cube:2", "--depth", "0"]) == EXIT_ERROR
        assert main(["nonsense"]) == EXIT_ERROR
        assert main(["pi0", "no-such-complex", "--all-pairs"]) == EXIT_ERROR


if __name__ == "__main__":
    pytest.main([__file__])
