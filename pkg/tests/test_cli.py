"""
Tests for the command-line interface
"""

import io
import json

import pytest

from main import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, main
from megagreedoids.documents import render_document


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


@pytest.fixture
def bad_axioms(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "name": "bad",
        "order": ["a", "b"],
        "structure": {"kind": "explicit", "sets": [[[], 0], [["a"], 1], [["b"], 1], [["a", "b"], 3]]},
    }))
    return str(path)


class TestCommands:
    def test_check(self, capsys):
        assert run(capsys, "check", "@rooted-graph")[:2] == (EXIT_OK, "pass")

    def test_check_failure(self, capsys, bad_axioms):
        code, out, _ = run(capsys, "check", bad_axioms)
        assert code == EXIT_VERIFICATION_FAILED
        assert out.splitlines()[0] == "fail"
        assert "axiom (2)" in out

    def test_chi(self, capsys):
        assert run(capsys, "chi", "@rooted-graph")[:2] == (EXIT_OK, "6*F[{1,2,3};4] + 2*F[{1,3};4]")
        assert run(capsys, "chi", "@greedoid")[1] == "3*F[{1,2};3] + 1*F[{2};3]"
        assert run(capsys, "chi", "@rooted-graph", "--basis", "M")[1] == "8*M[{1,2,3};4] + 2*M[{1,3};4]"

    def test_chi_literal(self, capsys):
        assert run(capsys, "chi", "@rooted-graph", "--literal")[1] == "4*F[{1,2,3};4] + 4*F[{1,3};4]"

    def test_poly(self, capsys):
        code, out, _ = run(capsys, "poly", "@rooted-graph", "--at", "3", "--at", "4")
        assert code == EXIT_OK
        assert out.splitlines() == ["2", "16"]
        assert run(capsys, "poly", "@rooted-graph", "--at", "-1")[1] == "6"

    def test_perms(self, capsys):
        code, out, _ = run(capsys, "perms", "@greedoid", "--descents")
        assert out.splitlines() == ["fnu {2}", "fun {1,2}", "nfu {1,2}", "nuf {1,2}"]
        assert run(capsys, "perms", "@greedoid")[1].splitlines() == ["fnu", "fun", "nfu", "nuf"]

    def test_generic(self, capsys):
        code, out, _ = run(capsys, "generic", "@rooted-graph", "--fn", "2,1,2,3")
        assert code == EXIT_OK
        assert out.splitlines() == ["feasible: true", "strongly feasible: true", "generic: true"]
        assert run(capsys, "generic", "@rooted-graph", "--count", "4")[1] == "16"

    def test_generic_bad_function(self, capsys):
        assert run(capsys, "generic", "@rooted-graph", "--fn", "1,2")[0] == EXIT_INPUT_ERROR
        assert run(capsys, "generic", "@rooted-graph", "--fn", "a,b,c,d")[0] == EXIT_INPUT_ERROR
        assert run(capsys, "generic", "@rooted-graph")[0] == EXIT_INPUT_ERROR

    def test_shelling(self, capsys):
        code, out, _ = run(capsys, "shelling", "@greedoid")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "greedy shelling: 4 facets, degree 3"

    def test_reciprocity_and_orientations(self, capsys):
        assert run(capsys, "reciprocity", "@rooted-graph", "--n", "1")[1] == "6"
        assert run(capsys, "orientations", "@rooted-graph")[1] == "6"
        assert run(capsys, "orientations", "@greedoid")[0] == EXIT_INPUT_ERROR

    def test_antipode(self, capsys):
        code, out, _ = run(capsys, "antipode", "@greedoid")
        assert code == EXIT_OK
        assert "MG[f,n,u]" in out

    def test_hopf_verify(self, capsys):
        code, out, _ = run(capsys, "hopf-verify", "@greedoid")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "pass"

    def test_oracle(self, capsys, tmp_path):
        report = tmp_path / "report.md"
        code, out, _ = run(capsys, "oracle", "@greedoid", "--max-n", "3", "--report", str(report))
        assert code == EXIT_OK
        assert "FAIL" not in out
        assert report.read_text().startswith("# Megagreedoid Verification Report")

    def test_corpus_then_render(self, capsys, tmp_path):
        code, out, _ = run(capsys, "corpus", "--seed", "5", "--size", "4", "--max-ground", "3")
        assert code == EXIT_OK
        path = tmp_path / "corpus.json"
        path.write_text(out)
        code, rendered, _ = run(capsys, "render", str(path))
        assert code == EXIT_OK
        assert json.loads(rendered) == json.loads(out)


class TestInputErrors:
    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", str(tmp_path / "absent.json"))
        assert code == EXIT_INPUT_ERROR
        assert "cannot read" in err

    def test_unknown_example(self, capsys):
        assert run(capsys, "chi", "@nothing")[0] == EXIT_INPUT_ERROR

    def test_bad_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("[1, 2")
        code, _, err = run(capsys, "chi", str(path))
        assert code == EXIT_INPUT_ERROR
        assert "invalid JSON" in err

    def test_stdin(self, capsys, monkeypatch, example_documents):
        monkeypatch.setattr("sys.stdin", io.StringIO(render_document(example_documents["greedoid"])))
        assert run(capsys, "chi", "-")[1] == "3*F[{1,2};3] + 1*F[{2};3]"

    def test_missing_command(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2
