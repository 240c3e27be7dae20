import json

import pytest

from app.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


class TestJobs:
    def test_m_text(self, capsys):
        code, out = run(capsys, "m", "--type", "A1~1", "--tensor", "1,1", "1,1", "--weight", "0")
        assert code == 0
        assert out.out.strip() == "q\nconfigurations: 1"

    def test_m_json(self, capsys):
        code, out = run(capsys, "m", "--type", "C2~1", "--tensor", "1,2", "1,1", "2,1",
                        "--weight", "3,1", "--format", "json")
        assert code == 0
        document = json.loads(out.out)
        assert document["type"] == "C2~1"
        assert document["polynomial"]["text"] == "1"
        assert document["tensor"] == [[1, 2], [1, 1], [2, 1]]

    def test_x_text(self, capsys):
        code, out = run(capsys, "x", "--type", "A1~1", "--tensor", "1,1", "1,1", "--weight", "0")
        assert code == 0
        assert out.out.strip() == "q^-1"

    def test_tree_dot(self, capsys):
        code, out = run(capsys, "tree", "--type", "A2~1", "--tensor", "1,1", "1,1")
        assert code == 0
        assert out.out.startswith("digraph")

    def test_vtree_json(self, capsys):
        code, out = run(capsys, "vtree", "--type", "C2~1", "--tensor", "1,2", "1,1", "2,1",
                        "--format", "json")
        assert code == 0
        document = json.loads(out.out)
        assert document["virtual"] is True
        assert document["ambient_type"] == "A3~1"
        assert len(document["nodes"]) == 9
        assert sum(node["selected"] for node in document["nodes"]) == 6

    def test_crystal_text(self, capsys):
        code, out = run(capsys, "crystal", "--type", "A1~1", "--tensor", "1,1", "--format", "text")
        assert code == 0
        assert out.out.splitlines()[0] == "2 elements, 2 arcs"


class TestErrors:
    def test_malformed_type_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["m", "--type", "Q3", "--tensor", "1,1", "--weight", "0"])
        assert exc.value.code == 2
        assert "malformed type" in capsys.readouterr().err

    def test_bad_weight_is_a_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["m", "--type", "A2~1", "--tensor", "1,1", "--weight", "1"])
        assert exc.value.code == 2

    def test_unsupported_type(self, capsys):
        code, out = run(capsys, "tree", "--type", "C2~1", "--tensor", "1,1")
        assert code == 1
        assert out.err.startswith("error: UnsupportedTypeError")

    def test_graph_cap(self, capsys):
        code, out = run(capsys, "crystal", "--type", "C2~1", "--tensor", "1,2", "--graph-cap", "3")
        assert code == 1
        assert "GraphCapExceeded" in out.err


class TestVerifyAndSchema:
    def test_verify_to_file(self, capsys, tmp_path):
        budget = tmp_path / "budget.json"
        budget.write_text(json.dumps({"figures": False, "kleber_types": ["A1~1"], "kleber_max_total": 2}))
        report = tmp_path / "report.json"
        code, _ = run(capsys, "verify", "--budget", str(budget), "--output", str(report), "--workers", "1")
        assert code == 0
        document = json.loads(report.read_text())
        assert document["budget"] == "budget"
        assert document["total"] == 3

    def test_schema(self, capsys):
        code, out = run(capsys, "schema", "m")
        assert code == 0
        assert "polynomial" in json.loads(out.out)["properties"]
