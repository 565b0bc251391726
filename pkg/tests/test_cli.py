"""Command line surface: manifests, exit codes, byte stability."""

import json
import pathlib

import pytest

from groupoidkit.cli import main

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fx(name: str) -> str:
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def results_of(stdout: str) -> dict:
    return json.loads(stdout)["results"]


class TestValidate:
    def test_valid_file(self, capsys):
        code, out, _ = run(capsys, "validate", fx("interval.json"))
        assert code == 0
        assert results_of(out)["valid"] is True

    def test_broken_inverse(self, capsys):
        code, out, _ = run(capsys, "validate", fx("broken-inverse.json"))
        assert code == 1
        res = results_of(out)
        assert res["valid"] is False and res["violations"]

    def test_truncated_file(self, capsys):
        code, _, err = run(capsys, "validate", fx("truncated.json"))
        assert code == 2
        assert "parse error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", fx("no-such-file.json"))
        assert code == 2
        assert "parse error" in err


class TestPushout:
    def test_circle_vertex_group(self, capsys):
        code, out, _ = run(
            capsys,
            "pushout",
            fx("circle-w.json"),
            fx("circle-u.json"),
            fx("circle-v.json"),
            fx("circle-i.json"),
            fx("circle-j.json"),
            "--vertex-group",
            "{B.m,C.m}",
        )
        assert code == 0
        res = results_of(out)
        assert res["square_commutes_on_generators"] is True
        assert len(res["apex"]["generators"]) == 2
        assert len(res["vertex_group"]["generators"]) == 1
        assert res["vertex_group"]["relators"] == []

    def test_byte_stable_results(self, capsys):
        argv = [
            "pushout",
            fx("circle-w.json"),
            fx("circle-u.json"),
            fx("circle-v.json"),
            fx("circle-i.json"),
            fx("circle-j.json"),
        ]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert results_of(out1) == results_of(out2)
        doc1, doc2 = json.loads(out1), json.loads(out2)
        doc1.pop("timing_ms"), doc2.pop("timing_ms")
        assert doc1 == doc2


class TestMonodromy:
    def test_c4_window_flags_infinite(self, capsys):
        code, out, _ = run(capsys, "monodromy", fx("c4-window.json"))
        assert code == 0
        res = results_of(out)
        assert res["finite"] is False
        assert res["rewriting_confluent"] is True
        assert res["iprime_injective"] is True
        assert len(res["presentation"]["generators"]) == 2
        assert len(res["presentation"]["relations"]) == 2

    def test_full_window_reproduces_g(self, capsys):
        code, out, _ = run(capsys, "monodromy", fx("full-window.json"))
        assert code == 0
        res = results_of(out)
        assert res["finite"] is True

    def test_extension_into_c8(self, capsys):
        code, out, _ = run(capsys, "monodromy", fx("c4-window.json"), "--extend", fx("extend-c8.json"))
        assert code == 0
        res = results_of(out)
        assert res["extension"]["local"] is True
        assert ["g:1", "g:1"] in res["extension"]["generators"]


class TestHolonomy:
    def test_mobius_summary(self, capsys):
        code, out, _ = run(capsys, "holonomy", fx("mobius3.json"))
        assert code == 0
        res = results_of(out)
        assert res["vertex_groups"] == {
            "0+": 1, "0-": 1, "1+": 1, "1-": 1, "2+": 1, "2-": 1,
            "c0": 2, "c1": 2, "c2": 2,
        }
        assert res["embedding_injective"] is True

    def test_annulus_summary(self, capsys):
        code, out, _ = run(capsys, "holonomy", fx("annulus3.json"))
        assert code == 0
        res = results_of(out)
        assert all(v == 1 for v in res["vertex_groups"].values())

    def test_full_window_hol_is_g(self, capsys):
        code, out, _ = run(capsys, "holonomy", fx("full-window.json"))
        assert code == 0
        res = results_of(out)
        assert res["hol_arrows"] == 6

    def test_paper_literal_mode_is_a_finding(self, capsys):
        code, out, _ = run(capsys, "holonomy", fx("full-window.json"), "--paper-literal-j0")
        assert code == 3
        res = results_of(out)
        assert res["projection_constant"] is False
        assert res["well_definedness_witness"] is not None

    def test_emit_dot(self, capsys, tmp_path):
        target = tmp_path / "hol.dot"
        code, _, _ = run(capsys, "holonomy", fx("annulus3.json"), "--emit-dot", str(target))
        assert code == 0
        assert target.read_text().startswith("digraph")


class TestExtendible:
    def test_mobius_fails(self, capsys):
        code, out, _ = run(capsys, "extendible", fx("mobius3.json"))
        assert code == 3
        res = results_of(out)
        assert res["extendible"] is False
        assert any(kind == "window-subspace" for kind, _ in res["failures"])

    def test_annulus_succeeds(self, capsys):
        code, out, _ = run(capsys, "extendible", fx("annulus3.json"))
        assert code == 0
        assert results_of(out)["extendible"] is True

    def test_c4_window_succeeds(self, capsys):
        code, out, _ = run(capsys, "extendible", fx("c4-window.json"))
        assert code == 0


class TestDouble:
    def test_box_c2_interchange(self, capsys):
        code, out, _ = run(capsys, "double", fx("box-c2.json"), "--check", "transport,interchange")
        assert code == 0
        res = results_of(out)
        assert res["checks"]["transport"]["ok"] is True
        assert res["checks"]["interchange"]["ok"] is True

    def test_inner_s3_roundtrip(self, capsys):
        code, out, _ = run(capsys, "double", fx("xmod-inner-s3.json"), "--check", "roundtrip")
        assert code == 0
        assert results_of(out)["checks"]["roundtrip"]["ok"] is True

    def test_xmod_c2_all_checks(self, capsys):
        code, out, _ = run(
            capsys, "double", fx("xmod-c2c2.json"), "--check", "transport,interchange,roundtrip,cube-closure"
        )
        assert code == 0
        res = results_of(out)
        assert all(entry["ok"] for entry in res["checks"].values())

    def test_square_catalogue_emission(self, capsys, tmp_path):
        target = tmp_path / "squares.json"
        code, _, _ = run(capsys, "double", fx("box-c2.json"), "--emit-squares", str(target))
        assert code == 0
        squares = json.loads(target.read_text())["squares"]
        assert len(squares) == 8

    def test_unknown_check_is_parse_error(self, capsys):
        code, _, err = run(capsys, "double", fx("box-c2.json"), "--check", "nonsense")
        assert code == 2
        assert "parse error" in err


class TestCube:
    def test_degenerate_cube_commutative(self, capsys):
        code, out, _ = run(capsys, "cube", fx("box-c2.json"), fx("cube-degenerate.json"))
        assert code == 0
        assert results_of(out)["commutative"] is True

    def test_malformed_cube(self, capsys, tmp_path):
        bad = tmp_path / "bad-cube.json"
        bad.write_text(json.dumps({"faces": {"top": 0, "bottom": 0, "left": 1, "right": 0, "front": 0, "back": 0}}))
        code, out, _ = run(capsys, "cube", fx("box-c2.json"), str(bad))
        assert code == 1
        assert "error" in results_of(out)


class TestGenerators:
    @pytest.mark.parametrize("command", ["mobius", "annulus"])
    def test_band_generators_roundtrip(self, capsys, command, tmp_path):
        code, out, _ = run(capsys, command, "--segments", "3")
        assert code == 0
        path = tmp_path / f"{command}.json"
        path.write_text(out)
        code2, out2, _ = run(capsys, "holonomy", str(path))
        assert code2 == 0
        res = results_of(out2)
        expected_centre = 2 if command == "mobius" else 1
        assert res["vertex_groups"]["c0"] == expected_centre

    def test_generated_fixture_matches_shipped(self, capsys):
        code, out, _ = run(capsys, "mobius", "--segments", "3")
        assert code == 0
        assert out == (FIXTURES / "mobius3.json").read_text()
