import json

import pytest

from lexkit import _cli

ARROW = """
diagram D on walking_arrow in finset {
    A = {a, b, c};
    B = {u, v};
    f = {a -> u, b -> u, c -> v};
}
cocone K on walking_arrow {
    apex B;
    leg a = f;
    leg b = id_B;
    rel r = id_A -> a, f -> b;
}
"""

FULL_RELATION = """
diagram R on parallel_pair in finposet {
    X = {p00, p01, p10, p11};
    Y = {y0, y1; y0 < y1};
    d = {p00 -> y0, p01 -> y0, p10 -> y1, p11 -> y1};
    c = {p00 -> y0, p01 -> y1, p10 -> y0, p11 -> y1};
}
"""

SMALL = ["--max-size", "2", "--samples", "4", "--probe-bound", "2"]


@pytest.fixture
def arrow_document(tmp_path):
    path = tmp_path / "arrow.lex"
    path.write_text(ARROW, encoding="utf-8")
    return str(path)


@pytest.fixture
def relation_document(tmp_path):
    path = tmp_path / "relation.lex"
    path.write_text(FULL_RELATION, encoding="utf-8")
    return str(path)


def run(argv, capsys):
    with pytest.raises(SystemExit) as e:
        _cli.main(argv)
    return e.value.code, capsys.readouterr()


@pytest.mark.unittest
class TestParseArgs:
    def test_parse_args_check(self):
        argv = ["check", "-p", "regular", "-c", "finposet", *SMALL]
        config = _cli.parse_args(argv)
        assert config.command == "check"
        assert config.property == "regular"
        assert config.carrier == "finposet"
        assert config.cutoffs.max_size == 2
        assert config.cutoffs.probe_bound == 2
        assert config.format == "text"

    def test_parse_args_defaults(self):
        config = _cli.parse_args(["famf", "--base", "walking_arrow"])
        assert config.max_length == 2
        assert config.cutoffs.seed == 1
        assert config.cutoffs.hom_cap == 4096
        assert config.verbose is False

    def test_parse_args_postulate(self):
        config = _cli.parse_args(
            ["postulate", "doc.lex", "--class", "reg", "--cross-check", "-v"]
        )
        assert config.document == "doc.lex"
        assert config.cls == "reg"
        assert config.cross_check
        assert config.verbose

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["check", "-p", "topos"],
            ["check", "--max-size", "a"],
            ["complete", "--base", "walking_arrow"],
            ["eval", "sideways", "--document", "x"],
        ],
    )
    def test_usage_errors_exit_with_the_input_code(self, argv):
        with pytest.raises(SystemExit) as e:
            _cli.parse_args(argv)
        assert e.value.code == _cli.EXIT_USAGE


@pytest.mark.unittest
class TestCheck:
    def test_holds(self, capsys):
        code, out = run(["check", "-p", "regular", *SMALL], capsys)
        assert code == 0
        assert "regular on finset: holds" in out.out

    def test_fails_with_a_counterexample(self, capsys):
        code, out = run(
            ["check", "-p", "exact", "-c", "finposet", "--format", "json", *SMALL],
            capsys,
        )
        assert code == 1
        document = json.loads(out.out)
        assert document["status"] == "fails"
        assert document["counterexample"]["property"] == "exact"

    def test_replay_reproduces(self, tmp_path, capsys):
        _, out = run(
            ["check", "-p", "exact", "-c", "finposet", "--format", "json", *SMALL],
            capsys,
        )
        stored = tmp_path / "cex.json"
        stored.write_text(out.out, encoding="utf-8")
        code, out = run(["check", "-c", "finposet", "--replay", str(stored)], capsys)
        assert code == 1
        assert "violation reproduces" in out.out

    def test_replay_no_longer_reproduces(self, tmp_path, capsys):
        stored = tmp_path / "cex.json"
        counterexample = {
            "property": "regular",
            "instance": {
                "kind": "regular_epi",
                "probe_bound": 2,
                "q": {
                    "source": {"elements": [0, 1]},
                    "target": {"elements": [0]},
                    "mapping": [[0, 0], [1, 0]],
                },
            },
        }
        stored.write_text(json.dumps(counterexample), encoding="utf-8")
        code, out = run(["check", "--replay", str(stored)], capsys)
        assert code == 0
        assert "no longer reproduces" in out.out

    def test_replay_of_a_missing_file(self, tmp_path, capsys):
        code, out = run(["check", "--replay", str(tmp_path / "none.json")], capsys)
        assert code == _cli.EXIT_USAGE
        assert "cannot replay" in out.err

    @pytest.mark.parametrize(
        "argv",
        [
            ["check"],
            ["check", "-p", "regular", "-c", "hilbert"],
            ["check", "-p", "filtered", "--shape", "discrete(2)"],
            ["check", "-p", "regular", "--max-size", "0"],
        ],
    )
    def test_input_errors(self, argv, capsys):
        code, _ = run(argv, capsys)
        assert code == _cli.EXIT_USAGE


@pytest.mark.unittest
class TestPostulate:
    def test_class_presentation_holds(self, arrow_document, capsys):
        argv = ["postulate", arrow_document, "--class", "reg", *SMALL]
        code, out = run(argv, capsys)
        assert code == 0
        assert "quotient on finset: holds" in out.out

    def test_cocone_block(self, arrow_document, capsys):
        argv = ["postulate", arrow_document, "--format", "json", *SMALL]
        code, out = run(argv, capsys)
        assert code == 0
        document = json.loads(out.out)
        assert document["presentation"] == "K"
        assert document["P2"]["status"] == "holds"

    def test_poset_quotient_fails(self, relation_document, capsys):
        argv = ["postulate", relation_document, "--class", "ex", *SMALL]
        code, out = run(argv, capsys)
        assert code == 1
        assert "P2: fails" in out.out

    def test_missing_document(self, tmp_path, capsys):
        code, _ = run(["postulate", str(tmp_path / "none.lex")], capsys)
        assert code == _cli.EXIT_USAGE


@pytest.mark.unittest
class TestOtherCommands:
    def test_complete(self, capsys):
        argv = ["complete", "--base", "discrete(1)", "--classes", "lext"]
        code, out = run([*argv, "--budget", "1", "--format", "json"], capsys)
        assert code == 0
        document = json.loads(out.out)
        assert document["status"] == "budget_exhausted"
        assert len(document["elements"]) == 3

    def test_unknown_class(self, capsys):
        argv = ["complete", "--base", "discrete(1)", "--classes", "bogus"]
        code, _ = run(argv, capsys)
        assert code == _cli.EXIT_USAGE

    def test_famf(self, capsys):
        argv = ["famf", "--base", "walking_arrow", "--max-length", "1"]
        code, out = run(argv, capsys)
        assert code == 0
        assert "3 objects" in out.out
        assert "failures: 0" in out.out

    @pytest.mark.parametrize(
        "kind, options, size",
        [("colimit", [], 2), ("colimit", ["--class", "reg"], 2), ("limit", [], 3)],
    )
    def test_eval(self, arrow_document, capsys, kind, options, size):
        argv = ["eval", kind, "--document", arrow_document, *options]
        code, out = run([*argv, "--format", "json"], capsys)
        assert code == 0
        document = json.loads(out.out)
        assert document["kind"] == kind
        assert document["size"] == size
