"""Tests for descriptor files, report envelopes, and the command surface."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from hirsch3 import cli
from hirsch3.classify import InvariantViolation
from hirsch3.families import AscHNNKb, BSbar, LatticeByZ, MetabelianH31
from hirsch3.fixtures import FIXTURES, corrupted_d_infty
from hirsch3.rationals import Mat2Q

F = Fraction


def run(capsys, *argv) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def emit(tmp_path: Path, name: str) -> Path:
    code = cli.main(["examples", "emit", name, "--dir", str(tmp_path)])
    assert code == 0
    return tmp_path / f"{name}.toml"


class TestDescriptorFiles:
    @pytest.mark.parametrize("fixture", FIXTURES, ids=[f.name for f in FIXTURES])
    def test_serialize_parse_round_trip(self, fixture):
        df = cli.DescriptorFile(
            fixture.descriptor, fixture.name, fixture.note, fixture.presentation
        )
        text = cli.serialize_descriptor_file(df)
        back = cli.parse_descriptor_text(text)
        assert back.descriptor == df.descriptor
        assert back.name == df.name
        assert back.notes == df.notes
        if df.presentation is None:
            assert back.presentation is None
        else:
            assert back.presentation is not None
            assert back.presentation.relators == tuple(
                r for r in df.presentation.relators
            )

    def test_value_may_contain_equals_sign(self):
        text = (
            "family = asc_hnn_kb\ne = 1\nf = 0\nd = 2\n"
            "presentation = < x, y, s | x y x^-1 = y^-1, s x s^-1 = x, "
            "s y s^-1 = y^2 >\n"
        )
        df = cli.parse_descriptor_text(text)
        assert df.descriptor == AscHNNKb(1, 0, 2)
        assert df.presentation is not None
        assert len(df.presentation.relators) == 3

    def test_comments_and_blank_lines_ignored(self):
        text = "# a comment\n\nfamily = bsbar\nm = 2\n\n# more\nn = 3\n"
        assert cli.parse_descriptor_text(text).descriptor == BSbar(2, 3)

    def test_errors_carry_line_numbers(self):
        with pytest.raises(cli.DescriptorFileError, match="line 2"):
            cli.parse_descriptor_text("family = bsbar\nno equals here\n")
        with pytest.raises(cli.DescriptorFileError, match="line 3"):
            cli.parse_descriptor_text("family = bsbar\nm = 2\nm = 3\n")
        with pytest.raises(cli.DescriptorFileError, match="integer"):
            cli.parse_descriptor_text("family = bsbar\nm = 2\nn = x\n")

    def test_unknown_family_and_stray_keys_rejected(self):
        with pytest.raises(cli.DescriptorFileError, match="unknown family"):
            cli.parse_descriptor_text("family = unicorn\n")
        with pytest.raises(cli.DescriptorFileError, match="unknown key"):
            cli.parse_descriptor_text("family = bsbar\nm = 2\nn = 3\nq = 1\n")
        with pytest.raises(cli.DescriptorFileError, match="missing"):
            cli.parse_descriptor_text("family = bsbar\nm = 2\n")

    def test_invalid_parameters_are_input_errors(self):
        with pytest.raises(cli.DescriptorFileError, match="bsbar"):
            cli.parse_descriptor_text("family = bsbar\nm = 0\nn = 3\n")

    def test_matrix_arity_checked(self):
        with pytest.raises(cli.DescriptorFileError, match="4 rationals"):
            cli.parse_descriptor_text("family = lattice_by_z\nmatrix = 1 2 3\n")

    def test_digest_ignores_cosmetic_fields(self):
        desc = LatticeByZ(Mat2Q.of(2, 1, 1, 1))
        a = cli.input_digest(cli.DescriptorFile(desc, "one", "note a"))
        b = cli.input_digest(cli.DescriptorFile(desc, "two", None))
        assert a == b
        assert a.startswith("sha256:")
        other = cli.input_digest(
            cli.DescriptorFile(LatticeByZ(Mat2Q.of(0, -2, 1, 0)))
        )
        assert other != a


class TestClassifyCommand:
    def test_text_report_fields(self, capsys, tmp_path):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, out, _ = run(capsys, "classify", str(path))
        assert code == 0
        assert "finitely presentable:     false" in out
        assert "cohomological dimension:  3" in out

    def test_json_envelope_is_stable_under_reserialization(self, capsys, tmp_path):
        path = emit(tmp_path, "lattice_sol")
        capsys.readouterr()
        code, out, _ = run(capsys, "classify", str(path), "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert json.dumps(data, indent=2, sort_keys=True) + "\n" == out
        assert data["tool"] == "hirsch3"
        assert data["input_digest"].startswith("sha256:")
        assert data["report"]["constructible_type"] == {"kind": "Type3"}

    def test_missing_file_is_input_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "classify", str(tmp_path / "absent.toml"))
        assert code == 2
        assert "cannot read" in err

    def test_invariant_violation_is_internal_error(
        self, capsys, tmp_path, monkeypatch
    ):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()

        def boom(desc):
            raise InvariantViolation("induced report is inconsistent")

        monkeypatch.setattr(cli, "classify", boom)
        code, _, err = run(capsys, "classify", str(path))
        assert code == 3
        assert "internal error" in err

    @pytest.mark.parametrize(
        "fixture", FIXTURES, ids=[f.name for f in FIXTURES]
    )
    def test_matches_committed_golden(self, capsys, tmp_path, fixture):
        path = emit(tmp_path, fixture.name)
        capsys.readouterr()
        code, out, _ = run(capsys, "classify", str(path), "--format", "json")
        assert code == 0
        golden = Path(__file__).parent / "golden" / f"{fixture.name}.json"
        expected = json.loads(golden.read_text())
        actual = json.loads(out)
        expected.pop("version")
        actual.pop("version")
        dump = lambda d: json.dumps(d, indent=2, sort_keys=True)
        assert dump(actual) == dump(expected)


class TestWordEqCommand:
    def test_equal_with_normal_forms(self, capsys, tmp_path):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, out, _ = run(capsys, "word-eq", str(path), "t a^2 t^-1", "a^3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "equal"
        assert lines[1].endswith("a^3")

    def test_unequal(self, capsys, tmp_path):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, out, _ = run(capsys, "word-eq", str(path), "a", "t")
        assert code == 0
        assert out.splitlines()[0] == "unequal"

    def test_kb_relator_is_identity(self, capsys, tmp_path):
        path = emit(tmp_path, "z_plus_z2")
        capsys.readouterr()
        code, out, _ = run(capsys, "word-eq", str(path), "x y x^-1 y", "1")
        assert code == 0
        assert out.splitlines()[0] == "equal"

    def test_fractional_normal_form_rendering(self, capsys, tmp_path):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, out, _ = run(capsys, "word-eq", str(path), "t^-1 a t", "a")
        assert code == 0
        assert out.splitlines()[0] == "unequal"
        assert "a^(2/3)" in out

    def test_unknown_generator_is_input_error(self, capsys, tmp_path):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, _, err = run(capsys, "word-eq", str(path), "z", "a")
        assert code == 2
        assert "error" in err


class TestSimplifyCommand:
    def test_round_trip_from_presentation_file(self, capsys, tmp_path):
        src = tmp_path / "pres.txt"
        src.write_text(
            "< a, t, u | t a t^-1 = a^2, u a u^-1 = a^5, "
            "u t u^-1 t^-1 = a^2 >\n"
        )
        code, out, _ = run(capsys, "simplify", str(src))
        assert code == 0
        assert "m=1 n=2 p=1 q=5 c=2" in out

    def test_out_of_fragment_diagnostic(self, capsys, tmp_path):
        src = tmp_path / "bad.txt"
        src.write_text(
            "< a, t, u | t a^2 t^-1 = a^3, u a u^-1 = a^5, "
            "u t u^-1 t^-1 = a^2 >\n"
        )
        code, _, err = run(capsys, "simplify", str(src))
        assert code == 2
        assert "Baumslag-Solitar" in err

    def test_descriptor_file_without_presentation_rejected(
        self, capsys, tmp_path
    ):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, _, err = run(capsys, "simplify", str(path))
        assert code == 2
        assert "no presentation" in err


class TestVerifyCommand:
    def test_fixture_passes_with_exit_zero(self, capsys, tmp_path):
        path = emit(tmp_path, "bsbar_23")
        capsys.readouterr()
        code, out, _ = run(capsys, "verify", str(path), "--trials", "40")
        assert code == 0
        data = json.loads(out)
        assert data["report"]["passed"] is True

    def test_corrupted_fixture_fails_with_exit_four(self, capsys, tmp_path):
        bad = corrupted_d_infty()
        path = tmp_path / "corrupted.toml"
        path.write_text(
            cli.serialize_descriptor_file(
                cli.DescriptorFile(
                    bad.descriptor, bad.name, None, bad.presentation
                )
            )
        )
        code, out, err = run(capsys, "verify", str(path), "--trials", "25")
        assert code == 4
        assert "relations" in err
        data = json.loads(out)
        assert data["report"]["passed"] is False

    def test_fixed_seed_is_byte_identical(self, capsys, tmp_path):
        path = emit(tmp_path, "z_plus_z2")
        capsys.readouterr()
        args = ("verify", str(path), "--trials", "30", "--seed", "9")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert (code1, code2) == (0, 0)
        assert out1 == out2


class TestExamplesCommand:
    def test_list_names_all_fixtures(self, capsys):
        code, out, _ = run(capsys, "examples", "list")
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip()]
        assert len(lines) == 7
        for fixture in FIXTURES:
            assert any(line.startswith(fixture.name) for line in lines)

    def test_emitted_file_parses_back(self, capsys, tmp_path):
        path = emit(tmp_path, "f_mod_kprime")
        df = cli.load_descriptor_file(path)
        assert df.name == "f_mod_kprime"
        assert df.presentation is not None

    def test_emit_unknown_fixture(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "examples", "emit", "nonesuch", "--dir", str(tmp_path)
        )
        assert code == 2
        assert "unknown fixture" in err

    def test_emit_requires_name(self, capsys, tmp_path):
        code, _, err = run(capsys, "examples", "emit", "--dir", str(tmp_path))
        assert code == 2


class TestElementRendering:
    def test_lattice_and_meta_forms(self):
        from hirsch3.families import ops_for
        from hirsch3.words import parse_word

        desc = MetabelianH31(1, 2, 1, 3, F(1))
        ops = ops_for(desc)
        g = ops.of_word(parse_word("a t u^-1"))
        assert cli.format_element(desc, g) == "a t u^-1"
        assert cli.format_element(desc, ops.identity()) == "1"

    def test_hnn_form_shows_britton_shape(self):
        from hirsch3.families import ops_for
        from hirsch3.words import parse_word

        desc = AscHNNKb(3, 1, 2)
        ops = ops_for(desc)
        g = ops.of_word(parse_word("s^-1 x s"))
        text = cli.format_element(desc, g)
        assert "s^-1" in text and "s^1" in text
