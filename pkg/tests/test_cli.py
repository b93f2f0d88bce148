import tempfile
from pathlib import Path

import pytest

from disjoint_weighing.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from disjoint_weighing.gridfile import read_grid
from disjoint_weighing.manifest import MANIFEST_NAME, read_manifest


def test_construct_dw28(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that construct writes the grid, the certificate and the manifest."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["construct", "dw28", "--out", temp_dir, "--json"]) == EXIT_PASS
        grid = read_grid(Path(temp_dir, "dw28.grid"))
        assert grid.weights == (9, 9, 9)
        assert grid.flag("skew")
        assert grid.flag("complete")
        assert read_grid(Path(temp_dir, "dw28.json")) == grid
        certificate: str = Path(temp_dir, "certificate.txt").read_text(encoding="utf-8")
        assert "FAIL" not in certificate
        assert "PASS complete_cover" in certificate
        assert "PASS split_identity" in certificate
        manifest = read_manifest(Path(temp_dir, MANIFEST_NAME))
        assert manifest.command == "construct"
        assert manifest.parameters["spec"] == "dw28"
    assert "dw28: DW(28;9,9,9)" in capsys.readouterr().out


def test_construct_pairs_and_verify() -> None:
    """Test that constructed HK and LM files verify as pair families."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["construct", "pairs:m=3", "--out", temp_dir]) == EXIT_PASS
        for name in ("hk.grid", "lm.grid"):
            assert main(["verify", str(Path(temp_dir, name)), "--expect", "pairs"]) == EXIT_PASS


def test_construct_pairs_without_lm() -> None:
    """Test that m = 1 has no LM file."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["construct", "pairs:m=1", "--out", temp_dir]) == EXIT_PASS
        assert Path(temp_dir, "hk.grid").exists()
        assert not Path(temp_dir, "lm.grid").exists()


@pytest.mark.parametrize("spec", ["f10:m=0", "dw40", "powers2:n=1,m=1"])
def test_construct_usage_errors(spec: str, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that impossible constructions exit with a usage error."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["construct", spec, "--out", temp_dir]) == EXIT_USAGE
    assert "dwm construct:" in capsys.readouterr().err


def test_construct_f10_with_base_file() -> None:
    """Test that a base of the wrong order given to f10 is refused."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["construct", "dw28", "--out", temp_dir]) == EXIT_PASS
        base = str(Path(temp_dir, "dw28.grid"))
        assert main(["construct", "f10:m=0", "--base", base, "--out", temp_dir]) == EXIT_USAGE


def test_verify(capsys: pytest.CaptureFixture[str]) -> None:
    """Test verify against the right and the wrong expectation."""
    with tempfile.TemporaryDirectory() as temp_dir:
        main(["construct", "dw28", "--out", temp_dir])
        capsys.readouterr()
        path = str(Path(temp_dir, "dw28.grid"))
        assert main(["verify", path]) == EXIT_PASS
        assert "PASS skew" in capsys.readouterr().out
        assert main(["verify", path, "--expect", "hadamard"]) == EXIT_FAIL
        assert "FAIL plus_minus_one" in capsys.readouterr().out
        assert main(["verify", path, "--expect", "pairs"]) == EXIT_USAGE


def test_verify_reports_parse_position(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that a malformed file exits 2 with its line and column."""
    with tempfile.TemporaryDirectory() as temp_dir:
        path = Path(temp_dir, "bad.grid")
        path.write_text("+0\n0x\n", encoding="utf-8")
        assert main(["verify", str(path)]) == EXIT_USAGE
    assert f"{path}:2:2:" in capsys.readouterr().err


def test_verify_failed_weighing(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that a grid that is not a weighing matrix fails with a witness."""
    with tempfile.TemporaryDirectory() as temp_dir:
        path = Path(temp_dir, "bad.grid")
        path.write_text("# weights=2\n++\n++\n", encoding="utf-8")
        assert main(["verify", str(path)]) == EXIT_FAIL
    assert "FAIL weighing at=(0,0,1)" in capsys.readouterr().out


def test_search(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that a successful search writes the seeds, the grid and a passing certificate."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["search", "--n", "1", "--out", temp_dir]) == EXIT_PASS
        assert Path(temp_dir, "seeds.json").exists()
        assert read_grid(Path(temp_dir, "dw.grid")).order == 4
        assert "FAIL" not in Path(temp_dir, "certificate.txt").read_text(encoding="utf-8")
    assert "found DW(4;1,1,1)" in capsys.readouterr().out


def test_search_budget_and_resume() -> None:
    """Test that a search out of budget leaves a checkpoint that a second run resumes."""
    with tempfile.TemporaryDirectory() as temp_dir:
        ckpt = str(Path(temp_dir, "n1.ckpt"))
        assert main(["search", "--n", "1", "--budget", "3", "--checkpoint", ckpt, "--out", temp_dir]) == EXIT_FAIL
        assert Path(ckpt).exists()
        assert main(["search", "--n", "1", "--resume", ckpt, "--out", temp_dir]) == EXIT_PASS


def test_search_stale_checkpoint() -> None:
    """Test that resuming a different problem is a usage error."""
    with tempfile.TemporaryDirectory() as temp_dir:
        ckpt = str(Path(temp_dir, "n1.ckpt"))
        main(["search", "--n", "1", "--budget", "3", "--checkpoint", ckpt, "--out", temp_dir])
        assert main(["search", "--n", "1", "--no-pruning", "--resume", ckpt, "--out", temp_dir]) == EXIT_USAGE


def test_search_invalid_n() -> None:
    """Test that n = 2 is refused."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["search", "--n", "2", "--out", temp_dir]) == EXIT_USAGE


@pytest.mark.parametrize(("k", "m", "ell"), [(1, 1, 1), (1, 1, 3)])
def test_scheme(k: int, m: int, ell: int) -> None:
    """Test that the scheme command certifies everything and writes its tables."""
    with tempfile.TemporaryDirectory() as temp_dir:
        argv = ["scheme", "--k", str(k), "--m", str(m), "--l", str(ell), "--out", temp_dir]
        assert main(argv) == EXIT_PASS
        for name in ("relations.grid", "tensor.json", "L1.txt", "eigenmatrices.txt", "certificate.txt", MANIFEST_NAME):
            assert Path(temp_dir, name).exists(), name
        certificate: str = Path(temp_dir, "certificate.txt").read_text(encoding="utf-8")
        assert "FAIL" not in certificate
        assert "PASS ratio_bound" in certificate
        assert "PASS closed_form_L1" in certificate


def test_scheme_small_intersection_matrix() -> None:
    """Test the L1 table written for the 4-vertex scheme."""
    with tempfile.TemporaryDirectory() as temp_dir:
        main(["scheme", "--k", "1", "--m", "1", "--l", "1", "--out", temp_dir])
        lines = Path(temp_dir, "L1.txt").read_text(encoding="utf-8").splitlines()
    assert lines[1:] == ["0 1 0 0", "0 0 0 1", "1 0 0 0", "0 0 1 0"]


@pytest.mark.parametrize(("k", "m", "ell"), [(2, 5, 1), (1, 1, 2)])
def test_scheme_usage_errors(k: int, m: int, ell: int) -> None:
    """Test a (k, m) with no built-in DW and a Hadamard order with no Sylvester matrix."""
    with tempfile.TemporaryDirectory() as temp_dir:
        assert main(["scheme", "--k", str(k), "--m", str(m), "--l", str(ell), "--out", temp_dir]) == EXIT_USAGE


def test_replay_gives_the_same_outputs() -> None:
    """Test that replaying a manifest reproduces the primary outputs byte for byte."""
    with tempfile.TemporaryDirectory() as temp_dir:
        first, second = Path(temp_dir, "first"), Path(temp_dir, "second")
        assert main(["construct", "powers2:n=2,m=2", "--out", str(first)]) == EXIT_PASS
        assert main(["replay", str(first / MANIFEST_NAME), "--out", str(second)]) == EXIT_PASS
        for name in ("powers2.grid", "certificate.txt"):
            assert (first / name).read_bytes() == (second / name).read_bytes()


def test_bad_arguments() -> None:
    """Test that argparse errors become exit code 2."""
    assert main(["construct"]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE


def test_verify_reports_unclaimed_properties(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that skew and complete cover are reported without a header claim and fail only when claimed."""
    with tempfile.TemporaryDirectory() as temp_dir:
        path = Path(temp_dir, "symmetric.grid")
        path.write_text("++\n+-\n", encoding="utf-8")
        assert main(["verify", str(path)]) == EXIT_PASS
        out: str = capsys.readouterr().out
        assert "PASS weighing" in out
        assert "# not claimed: FAIL skew at=(0,0,0)" in out
        assert "# not claimed: FAIL complete_cover" in out

        path.write_text("# skew=true\n++\n+-\n", encoding="utf-8")
        assert main(["verify", str(path)]) == EXIT_FAIL
        out = capsys.readouterr().out
        assert "FAIL skew" in out
        assert "# not claimed: FAIL skew" not in out
