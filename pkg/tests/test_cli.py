import json

import pytest

from betabound.cli import (
    EXIT_NO_CERTIFICATE,
    EXIT_OK,
    EXIT_PARSE,
    main,
    render,
    run,
)

TABLE_16_CELLS = [
    "1", "1", "2/3", "1/2", "1/2", "1/2", "<= 3/7", "<= 3/8",
    "1/3", "<= 1/3", "<= 1/3", "1/3", "<= 4/13", "2/7", "4/15", "1/4",
]


class TestClassCommands:
    def test_chi_surface(self):
        env = run(["chi", "--g", "2", "--k", "2", "--a", "2,1", "--c", "1"])
        assert env["results"]["chi"]["value"] == 6
        assert env["results"]["chi_multilinear"]["value"] == 6
        assert env["results"]["chi_pfaffian"]["value"] == 6

    def test_type_threefold_forty(self):
        env = run(["type", "--g", "3", "--k", "9,3", "--a", "1,1,3", "--c", "1"])
        assert env["results"]["type"]["value"] == [1, 1, 40]
        assert env["results"]["type"]["by"] == "smith-normal-form"

    def test_type_principal_product(self):
        env = run(["type", "--g", "2", "--k", "1", "--a", "1,1", "--c", "0"])
        assert env["results"]["type"]["value"] == [1, 1]

    def test_kgroup(self):
        env = run(["kgroup", "--g", "2", "--k", "3", "--a", "0,1", "--c", "1"])
        assert env["results"]["k_group"]["value"] == [3, 3]
        assert env["results"]["k_group"]["order"] == 9
        full = run(["kgroup", "--g", "2", "--k", "3", "--a", "0,1", "--c", "1", "--full"])
        assert full["results"]["k_group"]["value"] == [1, 1, 3, 3]

    def test_ample(self):
        env = run(["ample", "--g", "2", "--k", "3", "--a", "1,1", "--c", "1"])
        assert env["results"]["ample"]["value"] is True
        env = run(["ample", "--g", "2", "--k", "3", "--a", "0,0", "--c", "1"])
        assert env["results"]["ample"]["value"] is False


class TestBetaCommand:
    def test_general_surface_twelve(self):
        env = run(["beta", "--general", "2", "12"])
        interval = env["results"]["interval"]
        assert interval["exact"] is True
        assert interval["upper"]["value"] == "1/3"

    def test_general_threefold_fifteen(self):
        env = run(["beta", "--general", "3", "15"])
        interval = env["results"]["interval"]
        assert interval["upper"]["value"] == "7/15"
        assert interval["lower"] == {
            "kind": "inverse-root",
            "radicand": 15,
            "degree": 3,
            "display": "15^(-1/3)",
        }
        assert env["results"]["strictly_below"] == "1/2"
        assert env["results"]["witness"]["params"]["k"] == [4, 2]

    def test_explicit_threefold_forty(self):
        env = run(["beta", "--g", "3", "--k", "9,3", "--a", "1,1,3", "--c", "1"])
        assert env["results"]["flag_bound"]["value"] == "13/40"
        assert env["results"]["flag_bound"]["order"] == [0, 1, 2]
        assert env["results"]["interval"]["scope"] == "specific-construction"
        assert env["results"]["np"]["p_beta"] == 1

    def test_non_ample_class_exits_four(self, capsys):
        code = main(["beta", "--g", "2", "--k", "3", "--a", "0,0", "--c", "1"])
        assert code == EXIT_NO_CERTIFICATE
        assert "no certificate" in capsys.readouterr().err


class TestSearchCommand:
    def test_degree_seven(self):
        env = run(["search", "--g", "3", "--d", "7"])
        certs = env["results"]["certificates"]
        assert certs[0]["flag_bound"]["value"] == "4/7"
        best = [c for c in certs if c["flag_bound"]["value"] == "4/7"]
        assert any(c["params"]["k"] == [3, 2] for c in best)

    def test_degree_six_two_witnesses(self):
        env = run(["search", "--g", "3", "--d", "6"])
        best = [
            c for c in env["results"]["certificates"]
            if c["flag_bound"]["value"] == "2/3"
        ]
        ks = {tuple(c["params"]["k"]) for c in best if c["params"]["a"] == 1 and c["params"]["b"] == 1}
        assert {(3, 1), (2, 2)} <= ks

    def test_surface_nine(self):
        env = run(["search", "--g", "2", "--d", "9"])
        assert env["results"]["certificates"][0]["flag_bound"]["value"] == "1/3"

    def test_empty_box_is_ok_with_diagnostic(self, capsys):
        code = main(["search", "--g", "2", "--d", "7", "--max-k", "1", "--max-a", "1", "--max-b", "1"])
        assert code == EXIT_OK
        out = json.loads(capsys.readouterr().out)
        assert out["results"]["count"] == 0
        assert "diagnostic" in out["results"]

    def test_parallel_env_var(self, monkeypatch):
        sequential = run(["search", "--g", "3", "--d", "5"])
        monkeypatch.setenv("ABSL_THREADS", "2")
        parallel = run(["search", "--g", "3", "--d", "5"])
        assert sequential["results"] == parallel["results"]


class TestNpCommand:
    def test_threefold_forty(self):
        env = run(["np", "--g", "3", "--d", "40"])
        assert env["results"]["np"]["guaranteed_p"] == 1

    def test_surface_seven_boundary(self):
        env = run(["np", "--g", "2", "--d", "7"])
        assert env["results"]["np"]["guaranteed_p"] == 0
        assert env["results"]["np"]["projectively_normal_general"] is True
        below = run(["np", "--g", "2", "--d", "6"])
        assert below["results"]["np"]["projectively_normal_general"] is False


class TestTableCommand:
    def test_json_rows(self):
        env = run(["table", "--max", "16"])
        assert [row["display"] for row in env["results"]["rows"]] == TABLE_16_CELLS

    def test_markdown_layout(self):
        env = run(["table", "--max", "4", "--format", "markdown"])
        text = render(env)
        lines = text.splitlines()
        assert lines[0] == "| d | 1 | 2 | 3 | 4 |"
        assert lines[2] == "| beta | 1 | 1 | 2/3 | 1/2 |"

    def test_csv(self):
        env = run(["table", "--max", "3", "--format", "csv"])
        lines = render(env).splitlines()
        assert lines[0] == "d,beta,exact,rule"
        assert lines[3] == "3,2/3,True,odd-m-near-next-square"


class TestCliContract:
    def test_parse_error_exit_code(self, capsys):
        code = main(["chi", "--g", "2", "--k", "2,3", "--a", "1,1", "--c", "0"])
        assert code == EXIT_PARSE
        assert "error" in capsys.readouterr().err

    def test_argparse_rejects_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == EXIT_PARSE

    def test_json_round_trip(self, capsys):
        argv = ["type", "--g", "3", "--k", "9,3", "--a", "1,1,3", "--c", "1"]
        assert main(argv) == EXIT_OK
        first = json.loads(capsys.readouterr().out)
        assert main(first["argv"]) == EXIT_OK
        second = json.loads(capsys.readouterr().out)
        assert first == second

    def test_schema_and_echo(self):
        env = run(["chi", "--g", "1", "--k", "", "--a", "2", "--c", "1"])
        assert env["schema"] == 1
        assert env["command"] == "chi"
        assert env["inputs"] == {"g": 1, "k": [], "a": [2], "c": 1}

    def test_rationals_are_strings_not_decimals(self):
        env = run(["beta", "--general", "3", "15"])
        text = json.dumps(env)
        assert "7/15" in text
        assert "0.4666" not in text

    def test_search_csv_render(self):
        env = run(["search", "--g", "2", "--d", "9", "--format", "csv"])
        lines = render(env).splitlines()
        assert lines[0] == "rank,bound,a,b,c,k,order,type"
        assert lines[1].startswith("1,1/3,")

    def test_markdown_generic_render(self):
        env = run(["chi", "--g", "2", "--k", "2", "--a", "2,1", "--c", "1", "--format", "markdown"])
        text = render(env)
        assert text.startswith("# chi")
        assert "chi" in text
