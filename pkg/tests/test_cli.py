import json
import subprocess
import sys
from pathlib import Path
from typing import List

import pytest

from gammoidkit import Command, run
from gammoidkit.enums import CheckName, CommandName, FieldMode, OutputFormat
from gammoidkit.field.fp import MODULUS
from gammoidkit.matroid import dual
from gammoidkit.models import RunConfig
from gammoidkit.parser import canonical_rendering, parse_input
from gammoidkit.utils import get_run_defaults

ROOT = Path(__file__).parent.parent
CORPUS_FILES = sorted(p.name for p in (ROOT / "corpus").iterdir())


def config_for(corpus, name: str, command: CommandName, **kwargs) -> RunConfig:
    return RunConfig(command=command, input=str(corpus / name), **kwargs)


def run_gammoidkit(args: List[str], config: Path) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "gammoidkit.cli", "-c", str(config), *args],
        capture_output=True,
        text=True,
        cwd=ROOT,
        timeout=120,
    )


def test_bases_text(corpus) -> None:
    result = run(config_for(corpus, "example1.txt", CommandName.bases))
    assert result.exit_code == 0
    head, body = result.output.splitlines()
    assert head == f"# gammoidkit bases field=fp modulus={MODULUS} seed=1"
    bases = json.loads(body)
    assert (bases["n"], bases["rank"], len(bases["bases"])) == (6, 3, 17)
    assert [1, 2, 3] in bases["bases"] and [4, 5, 6] not in bases["bases"]


def test_bases_json(corpus) -> None:
    result = run(
        config_for(
            corpus,
            "example2.txt",
            CommandName.bases,
            format=OutputFormat.json,
            field=FieldMode.rational,
        )
    )
    payload = json.loads(result.output)
    assert payload["command"] == "bases"
    assert payload["field"] == {"name": "rational"}
    assert payload["seed"] == 1
    assert [1, 2, 6] in payload["result"]["bases"]


def test_bases_of_matroid_json(corpus) -> None:
    result = run(config_for(corpus, "example1_matroid.json", CommandName.bases))
    expected = run(config_for(corpus, "example1.txt", CommandName.bases))
    assert result.output == expected.output


def test_rank(corpus) -> None:
    result = run(config_for(corpus, "example1.txt", CommandName.rank, subset=(4, 5, 6)))
    assert result.output.splitlines()[1] == "rank(4,5,6) = 2"


def test_rank_out_of_range(corpus) -> None:
    result = run(config_for(corpus, "example1.txt", CommandName.rank, subset=(7,)))
    assert result.exit_code == 2
    assert "outside" in result.error


def test_dualize(corpus) -> None:
    dualized = run(config_for(corpus, "example1.txt", CommandName.dualize))
    gammoid = run(config_for(corpus, "example2.txt", CommandName.bases))
    assert dualized.output.splitlines()[1] == gammoid.output.splitlines()[1]


def test_represent_presentation(corpus) -> None:
    result = run(config_for(corpus, "example1.txt", CommandName.represent, normalize=True))
    lines = result.output.splitlines()
    assert lines[1] == "X 3x6"
    assert lines[2].split()[0] == "1"
    assert len([line for line in lines if line.startswith("weight ")]) == 6


def test_represent_digraph_rational(corpus) -> None:
    result = run(
        config_for(corpus, "example2_weighted.txt", CommandName.represent, field=FieldMode.rational)
    )
    lines = result.output.splitlines()
    assert lines[1] == "Y 3x6"
    assert lines[2] == "10/1 5/1 0/1 1/1 0/1 0/1"
    assert "weight 1 2 2/1" in lines


def test_represent_is_deterministic(corpus) -> None:
    config = config_for(corpus, "example2.txt", CommandName.represent, seed=17)
    assert run(config).output == run(config).output
    other = config_for(corpus, "example2.txt", CommandName.represent, seed=18)
    assert run(config).output != run(other).output


def test_represent_matroid_rejected(corpus) -> None:
    result = run(config_for(corpus, "example1_matroid.json", CommandName.represent))
    assert result.exit_code == 2


def test_convert(corpus) -> None:
    result = run(config_for(corpus, "example2.txt", CommandName.convert))
    assert result.output == (
        "presentation\nground 6\nset 1 2 3\nset 2 4 5\nset 3 5 6\nmatch 1 2 3\n"
    )


@pytest.mark.parametrize("name", ["example1.txt", "example2.txt"])
def test_convert_twice(corpus, tmp_path, name) -> None:
    once = run(config_for(corpus, name, CommandName.convert))
    assert once.exit_code == 0, once.output
    path = tmp_path / "converted.txt"
    path.write_text(once.output)
    twice = run(RunConfig(command=CommandName.convert, input=str(path)))
    assert twice.exit_code == 0, twice.output
    assert twice.output == canonical_rendering(parse_input(corpus / name))


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_verify_corpus(corpus, name) -> None:
    result = run(config_for(corpus, name, CommandName.verify, format=OutputFormat.json))
    assert result.exit_code == 0, result.output
    reports = json.loads(result.output)["result"]
    assert [report["check"] for report in reports] == ["exchange", "lgv", "orthogonal", "duality"]
    assert all(report["pass"] for report in reports)


def test_verify_single_check(corpus) -> None:
    result = run(config_for(corpus, "example2.txt", CommandName.verify, check=CheckName.duality))
    lines = result.output.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("duality: pass")


def test_verify_skips_lgv_on_cycles(corpus) -> None:
    result = run(
        config_for(
            corpus, "cycle.txt", CommandName.verify, check=CheckName.lgv, format=OutputFormat.json
        )
    )
    report = json.loads(result.output)["result"][0]
    assert report["details"] == {"skipped": "cyclic"}


def test_verify_failure_exit_code(tmp_path) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"n": 4, "rank": 2, "bases": [[1, 2], [3, 4]]}')
    result = run(RunConfig(command=CommandName.verify, input=str(path), format=OutputFormat.json))
    assert result.exit_code == 1
    exchange = json.loads(result.output)["result"][0]
    assert exchange["pass"] is False
    assert exchange["details"]["matroid"]["counterexample"] == [[1, 2], [3, 4], 1]


def test_verify_without_complete_matching(tmp_path) -> None:
    path = tmp_path / "deficient.txt"
    path.write_text("presentation\nground 2\nset 1\nset 1\n")
    result = run(RunConfig(command=CommandName.verify, input=str(path), format=OutputFormat.json))
    assert result.exit_code == 1
    reports = json.loads(result.output)["result"]
    assert reports[0]["pass"] is True
    assert reports[3]["details"]["error"] == "NoCompleteMatchingError"


def test_parse_error_exit_code(tmp_path) -> None:
    path = tmp_path / "bad.txt"
    path.write_text("digraph\nvertices 2\nedge 1 3\n")
    result = run(RunConfig(command=CommandName.bases, input=str(path)))
    assert result.exit_code == 2
    assert result.error.startswith(f"{path}:3:8: ")
    result = run(RunConfig(command=CommandName.bases, input=str(path), format=OutputFormat.json))
    assert json.loads(result.output)["error"] == "ParseError"


def test_command_matroid_kinds(corpus) -> None:
    command = Command(config_for(corpus, "example2.txt", CommandName.dualize))
    assert command.document.kind == "digraph"
    assert dual(command.dualize()) == command.matroid()


def test_config_rejects_bad_seed() -> None:
    with pytest.raises(ValueError):
        RunConfig(command=CommandName.bases, seed=-1)
    with pytest.raises(ValueError):
        RunConfig(command=CommandName.bases, max_retries=-1)


def test_cli_bases(corpus, tmp_path) -> None:
    proc = run_gammoidkit(
        ["-i", str(corpus / "example1.txt"), "--format", "json", "bases"],
        tmp_path / "pyproject.toml",
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["result"]["rank"] == 3


def test_cli_verify_duality(corpus, tmp_path) -> None:
    proc = run_gammoidkit(
        ["-i", str(corpus / "example2.txt"), "verify", "--check", "duality"],
        tmp_path / "pyproject.toml",
    )
    assert proc.returncode == 0, proc.stderr
    assert "duality: pass" in proc.stdout


def test_cli_rank(corpus, tmp_path) -> None:
    proc = run_gammoidkit(
        ["-i", str(corpus / "example1.txt"), "rank", "--subset", "4,5,6"],
        tmp_path / "pyproject.toml",
    )
    assert proc.stdout.splitlines()[1] == "rank(4,5,6) = 2"


@pytest.mark.parametrize("command", ["bases", "represent", "verify"])
@pytest.mark.parametrize("name", CORPUS_FILES)
def test_cli_is_deterministic(corpus, tmp_path, name, command) -> None:
    args = ["-i", str(corpus / name), "--seed", "5", command]
    first = run_gammoidkit(args, tmp_path / "pyproject.toml")
    second = run_gammoidkit(args, tmp_path / "pyproject.toml")
    # a bare matroid has no presentation to represent
    expected = 2 if name.endswith(".json") and command == "represent" else 0
    assert first.returncode == second.returncode == expected, first.stderr
    assert first.stdout == second.stdout


def test_cli_missing_input(tmp_path) -> None:
    proc = run_gammoidkit(["bases"], tmp_path / "pyproject.toml")
    assert proc.returncode == 2
    assert "--input" in proc.stderr


def test_cli_unreadable_input(tmp_path) -> None:
    proc = run_gammoidkit(
        ["-i", str(tmp_path / "absent.txt"), "bases"], tmp_path / "pyproject.toml"
    )
    assert proc.returncode == 2
    assert "cannot read input" in proc.stderr


def test_cli_init_and_config(corpus, tmp_path) -> None:
    config = tmp_path / "pyproject.toml"
    proc = run_gammoidkit(["--seed", "7", "--field", "rational", "init"], config)
    assert proc.returncode == 0, proc.stderr
    assert get_run_defaults(config) == {
        "seed": 7,
        "field": "rational",
        "format": "text",
        "max_retries": 3,
    }
    proc = run_gammoidkit(["-i", str(corpus / "example1.txt"), "bases"], config)
    assert proc.stdout.startswith("# gammoidkit bases field=rational seed=7")


def test_undecodable_input_exit_code(tmp_path) -> None:
    path = tmp_path / "latin1.txt"
    path.write_bytes(b"digraph\nvertices 2\n# \xff\xfe\n")
    result = run(RunConfig(command=CommandName.bases, input=str(path), format=OutputFormat.json))
    assert result.exit_code == 2
    assert json.loads(result.output)["error"] == "ParseError"


def test_non_integer_matroid_rejected(tmp_path) -> None:
    path = tmp_path / "fractional.json"
    path.write_text('{"n": 2, "rank": 1, "bases": [[1.5]]}')
    result = run(RunConfig(command=CommandName.dualize, input=str(path)))
    assert result.exit_code == 2
    assert "not an integer" in result.error
