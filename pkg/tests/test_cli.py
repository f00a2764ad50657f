from __future__ import annotations

import json

import pytest

from diagram_maxgroups.cli import EXIT_OK, EXIT_USAGE, build_parser, main


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main([*argv, "--no-cache"])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("--monoid", "Pn", "--n", "4", "--rank", "3"), "P_D=10 E_D=34"),
        (("--monoid", "Pn", "--n", "3", "--rank", "2"), "P_D=6 E_D=18"),
        (("--monoid", "Brauer", "--n", "4", "--rank", "0"), "P_D=3 E_D=9"),
    ],
)
def test_stats(capsys, argv: tuple[str, ...], expected: str) -> None:
    code, out, _ = _run(capsys, "stats", *argv)

    assert code == EXIT_OK
    assert expected in out
    assert "conexo: sim" in out


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("--family", "ig", "--n", "3", "--rank", "0"), "Z (free rank 1)"),
        (("--family", "pg-linked", "--n", "3", "--rank", "0"), "trivial"),
        (("--family", "pg", "--n", "4", "--rank", "2"), "S_2 (order 2, certified)"),
    ],
)
def test_identify(capsys, argv: tuple[str, ...], expected: str) -> None:
    code, out, _ = _run(capsys, "identify", *argv)

    assert code == EXIT_OK
    assert out.splitlines()[0] == expected


def test_identify_json(capsys) -> None:
    code, out, _ = _run(capsys, "identify", "--n", "3", "--rank", "2", "--format", "json")
    payload = json.loads(out)

    assert code == EXIT_OK
    assert payload["kind"] == "FREE"
    assert payload["rank"] == 7


def test_stats_json(capsys) -> None:
    code, out, _ = _run(capsys, "stats", "--n", "3", "--rank", "1", "--format", "json")
    payload = json.loads(out)

    assert code == EXIT_OK
    assert payload["P_D"] == 10
    assert sum(payload["strata"].values()) == payload["E_D"]


def test_graph_dot(capsys) -> None:
    code, out, _ = _run(capsys, "graph", "--n", "3", "--rank", "2", "--format", "dot")

    assert code == EXIT_OK
    assert out.startswith("graph gh {")
    assert out.count("color=red") == 11


def test_presentation_cas_and_text(capsys) -> None:
    code, out, _ = _run(capsys, "presentation", "--n", "3", "--rank", "2", "--format", "cas")
    assert code == EXIT_OK
    assert "FreeGroup(" in out
    assert "rels := [ ];" in out

    code, out, _ = _run(capsys, "presentation", "--n", "3", "--rank", "2")
    assert "geradores (18):" in out
    assert "geradores (7):" in out


def test_squares_dump(capsys) -> None:
    code, out, _ = _run(capsys, "squares", "--n", "3", "--rank", "1", "--format", "json")
    rows = json.loads(out)

    assert code == EXIT_OK
    assert rows
    assert {row["orientation"] for row in rows} <= {"LR", "UD"}

    code, out, _ = _run(capsys, "squares", "--n", "3", "--rank", "0", "--family", "pg-linked")
    assert "diamantes ligados" in out.splitlines()[0]


def test_emit_document(capsys) -> None:
    code, out, _ = _run(capsys, "emit", "--n", "1", "--doc", "pg")

    assert code == EXIT_OK
    assert out.startswith("# pg: 2 geradores, 10 relações")


def test_output_file(capsys, tmp_path) -> None:
    target = tmp_path / "saida" / "gh.dot"
    code, out, _ = _run(capsys, "graph", "--n", "2", "--rank", "1", "--format", "dot", "--output", str(target))

    assert code == EXIT_OK
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("graph gh {")


@pytest.mark.parametrize(
    "argv",
    [
        ("stats", "--monoid", "Brauer", "--n", "3", "--rank", "0"),
        ("identify", "--monoid", "Tn", "--n", "3", "--rank", "1", "--family", "pg"),
        ("stats", "--monoid", "Adjacency"),
        ("stats", "--n", "3", "--format", "dot"),
    ],
)
def test_usage_errors_exit_with_two(capsys, argv: tuple[str, ...]) -> None:
    code, out, err = _run(capsys, *argv)

    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("erro:")


def test_adjacency_graph_file(capsys, tmp_path) -> None:
    path = tmp_path / "k3.txt"
    path.write_text("a b\nb c\nc a\n", encoding="utf-8")

    code, out, _ = _run(capsys, "identify", "--monoid", "Adjacency", "--graph", str(path), "--family", "pg-linked")

    assert code == EXIT_OK
    assert out.splitlines()[0] == "Z (free rank 1)"


def test_parser_requires_a_command() -> None:
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
