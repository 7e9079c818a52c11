from __future__ import annotations

import json
import re
from pathlib import Path

import pytest
import yaml

from centlab.cli import main, parse_args
from centlab.constants import EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE


@pytest.fixture()
def no_config(tmp_path: Path) -> list[str]:
    return ["--config", str(tmp_path / "missing.yaml")]


def test_parse_args_defaults() -> None:
    args = parse_args(["verify", "thm1", "p=3"])
    assert args.command == "verify"
    assert args.suite == "thm1"
    assert args.params == ["p=3"]
    assert args.config == "config.yaml"
    assert args.json is False


def test_no_command_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    assert main([]) == EXIT_USAGE
    assert "usage" in capsys.readouterr().out


def test_init_config_writes_defaults(tmp_path: Path) -> None:
    target = tmp_path / "conf" / "centlab.yaml"
    assert main(["--init-config", str(target)]) == EXIT_OK
    raw = yaml.safe_load(target.read_text(encoding="utf-8"))
    assert raw["verify"]["primes"] == [2, 3]
    assert raw["isomorphism"]["graph_vertex_bound"] == 1000


def test_build_json(no_config: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["build", "heis:q=4", "--json", *no_config]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    (group,) = payload["groups"]
    assert group["order"] == 64
    assert group["center"] == 4
    assert group["abelian"] is False
    assert group["quotient"] == "Z4xZ4"
    assert group["cent_count"] == 10


def test_inconsistent_extension_exit_code(no_config: list[str]) -> None:
    assert main(["build", "ce:p=2,r=0,m=8,a=0,b=0,g=1", "--json", *no_config]) == EXIT_INCONSISTENT


def test_usage_errors(no_config: list[str], tmp_path: Path) -> None:
    assert main(["build", "nope:q=4", *no_config]) == EXIT_USAGE
    assert main(["build", *no_config]) == EXIT_USAGE
    assert main(["export", "m2", "p=2", "--out", str(tmp_path / "m2.dot"), *no_config]) == EXIT_USAGE
    assert main(["verify", "conjecture", "p=3", "n=3", "--json", *no_config]) == EXIT_USAGE


def _dot_nodes_and_edges(text: str) -> tuple[list[str], list[tuple[str, str]]]:
    nodes = re.findall(r'^\s+("[^"]+");$', text, flags=re.MULTILINE)
    edges = re.findall(r'^\s+("[^"]+") -- ("[^"]+");$', text, flags=re.MULTILINE)
    return nodes, edges


def test_export_m1_dot(no_config: list[str], tmp_path: Path) -> None:
    out = tmp_path / "m1.dot"
    assert main(["export", "m1", "p=2", "--out", str(out), *no_config]) == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert text.startswith('graph "M1(p=2,z=4)" {')
    nodes, edges = _dot_nodes_and_edges(text)
    assert len(nodes) == len(set(nodes)) == 18
    assert text.count("subgraph cluster_") == 9
    assert edges and all(u in nodes and v in nodes for u, v in edges)
    assert not re.search(r"^\s+\d+ ", text, flags=re.MULTILINE)


def test_export_ccc_dot_uses_class_labels_as_ids(no_config: list[str], tmp_path: Path) -> None:
    out = tmp_path / "ccc.dot"
    assert main(["export", "ccc", "heis:q=4", "--format", "dot", "--out", str(out), *no_config]) == EXIT_OK
    nodes, edges = _dot_nodes_and_edges(out.read_text(encoding="utf-8"))
    assert len(nodes) == len(set(nodes)) == 18
    assert all(re.fullmatch(r'"T[^":]+:[^"]+"', node) for node in nodes)
    assert edges and all(u in nodes and v in nodes for u, v in edges)


def test_export_ccc_json(no_config: list[str], tmp_path: Path) -> None:
    out = tmp_path / "ccc.json"
    assert main(["export", "ccc", "heis:q=4", "--format", "json", "--out", str(out), *no_config]) == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["n_vertices"] == 18
    assert sum(payload["join"]["sizes"]) == 18
    assert sorted(v for part in payload["parts"] for v in part) == list(range(18))


def test_export_defaults_to_configured_directory(tmp_path: Path) -> None:
    config = tmp_path / "centlab.yaml"
    config.write_text(yaml.safe_dump({"exports": {"out_dir": str(tmp_path / "out")}}), encoding="utf-8")
    assert main(["export", "m2orbit", "p=3", "--format", "json", "--config", str(config)]) == EXIT_OK
    payload = json.loads((tmp_path / "out" / "m2orbit_p3_z3.json").read_text(encoding="utf-8"))
    assert payload["vertices"] == 32


@pytest.mark.parametrize("suite", ["thm1", "thm2", "tables", "lemmas"])
def test_verify_suites_at_p2(suite: str, no_config: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["verify", suite, "p=2", "--json", *no_config]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["reports"]
    for report in payload["reports"]:
        assert report["suite"] == suite
        assert report["match"] is True
        assert "elapsed_ms" not in report


def test_verify_conjecture_with_timings(no_config: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["verify", "conjecture", "p=3", "n=1", "--json", "--timings", *no_config])
    assert code == EXIT_OK
    (report,) = json.loads(capsys.readouterr().out)["reports"]
    assert report["cent"] == {"cent_count": 5, "predicted": 5, "match": True}
    assert "conjecture" in report["elapsed_ms"]


def test_max_order_flag_bounds_builds(no_config: list[str]) -> None:
    assert main(["build", "heis:q=9", "--max-order", "100", *no_config]) == EXIT_USAGE
    assert main(["build", "heis:q=4", "--max-order", "100", "--json", *no_config]) == EXIT_OK


def test_configured_dense_table_limit_reaches_build(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    config = tmp_path / "centlab.yaml"
    config.write_text(yaml.safe_dump({"engine": {"dense_table_limit": 10}}), encoding="utf-8")
    assert main(["build", "heis:q=4", "--json", "--config", str(config)]) == EXIT_OK
    (group,) = json.loads(capsys.readouterr().out)["groups"]
    assert group["backend"] == "rule"
