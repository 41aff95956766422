"""JSON/DOT encodings and the command-line surface.

CLI tests drive `main(argv)` in-process against the spec files shipped in
specs/, so they double as a format check on those files.
"""

import json
from pathlib import Path

import pytest

from conftest import FIB, even_shift_spec, golden_mean_spec
from lgk.alphabet import Alphabet
from lgk.cli import main
from lgk.serialize import (
    export_dot,
    report_dumps,
    spec_dumps,
    spec_loads,
    system_dumps,
    system_loads,
    verdict_payload,
)
from lgk.subshift import DyckN, Expanded, FullShift, MarkovDyck
from lgk.system import (
    LambdaGraphSystem,
    VertexLevel,
    build_cantor_horizon_dyck,
    build_lambda_synchronizing,
    canonical_form,
)
from lgk.invariants import invariant_report
from lgk.verdict import Verdict

SPECS = Path(__file__).resolve().parent.parent / "specs"


def unseparated_system(depth: int = 2) -> LambdaGraphSystem:
    """Two disjoint equally-labeled loops: passes every local check except
    predecessor separation."""
    level = VertexLevel(size=2, tags=("", ""))
    return LambdaGraphSystem(
        alphabet=Alphabet(("x",)),
        levels=(level,) * (depth + 1),
        edges=(((0, 0, 0), (1, 0, 1)),) * depth,
        iota=((0, 1),) * depth,
    )


# -- serialization -------------------------------------------------------


def test_spec_roundtrip_every_kind():
    specs = [
        golden_mean_spec(),
        even_shift_spec(),
        DyckN(2),
        MarkovDyck(FIB),
        FullShift(3),
        Expanded(base=DyckN(2), target=0, fresh_name="e"),
    ]
    for spec in specs:
        text = spec_dumps(spec)
        assert text.endswith("\n")
        assert spec_loads(text) == spec
        assert spec_dumps(spec_loads(text)) == text


def test_spec_dump_is_deterministic():
    text = spec_dumps(golden_mean_spec())
    payload = json.loads(text)
    # key order in the file does not matter for loading
    shuffled = json.dumps(dict(reversed(list(payload.items()))))
    assert spec_loads(shuffled) == golden_mean_spec()
    assert list(payload) == sorted(payload)


def test_spec_payload_validation():
    with pytest.raises(ValueError):
        spec_loads("[]")
    with pytest.raises(ValueError):
        spec_loads('{"kind": "mystery"}')
    bad_expanded = {
        "kind": "expanded",
        "base": {"kind": "full", "n": 2},
        "target": "0",
        "fresh": "e",
    }
    with pytest.raises(ValueError):
        spec_loads(json.dumps(bad_expanded))


def test_system_roundtrip():
    for sys in [
        build_lambda_synchronizing(golden_mean_spec(), 3),
        build_cantor_horizon_dyck(2, 3),
    ]:
        text = system_dumps(sys)
        assert system_loads(text) == sys


def test_system_loads_sorts_and_dedups_edges():
    sys = build_lambda_synchronizing(golden_mean_spec(), 2)
    payload = json.loads(system_dumps(sys))
    layer = payload["edges"][1]
    payload["edges"][1] = [layer[-1]] + layer + [layer[0]]
    assert system_loads(json.dumps(payload)) == sys


def test_canonical_forms_serialize_to_identical_bytes():
    from lgk.subshift import SoficGraph, sft_cover

    direct = build_lambda_synchronizing(golden_mean_spec(), 4)
    cover, _ = sft_cover(golden_mean_spec())
    via_cover = build_lambda_synchronizing(SoficGraph(cover), 4)
    assert system_dumps(canonical_form(direct)) == system_dumps(canonical_form(via_cover))


def test_report_payload_shape():
    report = invariant_report(build_lambda_synchronizing(golden_mean_spec(), 4))
    payload = json.loads(report_dumps(report))
    assert set(payload) == {"sizes", "levels", "connecting", "stabilized"}
    assert payload["sizes"] == [1, 2, 2, 2, 2]
    assert payload["stabilized"] == {"verdict": "yes", "level": 1}
    assert payload["levels"][0]["k0"] == {"rank": 1, "torsion": [], "text": "Z"}
    assert all(payload["connecting"])


def test_verdict_payloads():
    assert verdict_payload(Verdict.yes()) == {"verdict": "yes"}
    assert verdict_payload(Verdict.no(witness=(1, 2))) == {
        "verdict": "no",
        "witness": [1, 2],
    }
    assert verdict_payload(Verdict.unknown(note="depth")) == {
        "verdict": "unknown",
        "note": "depth",
    }


def test_export_dot_structure():
    sys = build_lambda_synchronizing(golden_mean_spec(), 2)
    dot = export_dot(sys)
    assert dot.startswith("digraph system {")
    assert dot.endswith("}\n")
    for l in range(3):
        assert f"subgraph cluster_{l}" in dot
    assert dot.count("style=dashed") == sum(len(m) for m in sys.iota)
    assert '[label="1"]' in dot


def test_export_dot_rejects_empty_layer():
    sys = LambdaGraphSystem(
        alphabet=Alphabet(("x",)),
        levels=(VertexLevel(1, ("",)), VertexLevel(1, ("",))),
        edges=((),),
        iota=((0,),),
    )
    with pytest.raises(ValueError):
        export_dot(sys)


# -- CLI -----------------------------------------------------------------


@pytest.fixture(autouse=True)
def _no_budget_env(monkeypatch):
    monkeypatch.delenv("LGK_BUDGET", raising=False)


def test_cli_build_text(capsys):
    assert main(["build", "--spec", str(SPECS / "goldenmean.json"), "--depth", "3"]) == 0
    out = capsys.readouterr().out
    assert "level  vertices" in out
    assert out.count("2") >= 3


def test_cli_build_json_stdout(capsys):
    code = main(
        ["build", "--spec", str(SPECS / "dyck2.json"), "--depth", "3", "--format", "json"]
    )
    assert code == 0
    sys = system_loads(capsys.readouterr().out)
    assert sys.sizes == (1, 2, 4, 8)
    assert sys == build_cantor_horizon_dyck(2, 3)


def test_cli_build_out_file(tmp_path, capsys):
    target = tmp_path / "system.json"
    code = main(
        ["build", "--spec", str(SPECS / "goldenmean.json"), "--depth", "2", "--out", str(target)]
    )
    assert code == 0
    assert "system written to" in capsys.readouterr().out
    assert system_loads(target.read_text()) == build_lambda_synchronizing(
        golden_mean_spec(), 2
    )


def test_cli_verify_passes_on_clean_system(capsys):
    code = main(["verify", "--spec", str(SPECS / "goldenmean.json"), "--depth", "6"])
    assert code == 0
    out = capsys.readouterr().out
    assert "simplicity predicted:" in out
    assert "no" not in out.replace("unknown", "")


def test_cli_verify_json(capsys):
    code = main(
        ["verify", "--spec", str(SPECS / "full2.json"), "--depth", "6", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["checks"]["left-resolving"] == {"verdict": "yes"}
    assert payload["simplicity predicted"]["verdict"] == "yes"


def test_cli_verify_shallow_depth_is_inconclusive(capsys):
    code = main(["verify", "--spec", str(SPECS / "even_shift.json"), "--depth", "5"])
    assert code == 3
    assert "unknown" in capsys.readouterr().out


def test_cli_verify_flags_broken_system(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(system_dumps(unseparated_system()))
    code = main(["verify", "--system", str(bad)])
    assert code == 1
    assert "predecessor-separated:" in capsys.readouterr().out


def test_cli_invariants_json(capsys):
    code = main(
        ["invariants", "--spec", str(SPECS / "dyck2.json"), "--depth", "4", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["sizes"] == [1, 2, 4, 8, 16]
    assert payload["levels"][1]["k0"]["text"] == "Z^2 ⊕ Z/2"
    assert payload["stabilized"]["verdict"] == "unknown"


def test_cli_invariants_text(capsys):
    code = main(["invariants", "--spec", str(SPECS / "markovdyck_fib.json"), "--depth", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "sizes: 1 2 3 5" in out
    assert "stabilized: unknown" in out


def test_cli_expand(capsys):
    code = main(["expand", "--spec", str(SPECS / "goldenmean.json"), "--expand", "1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "sft"
    assert payload["alphabet"] == ["0", "1", "e"]
    assert payload["forbidden"] == ["0 1", "1 1", "e 0", "e 1 e 1", "e e"]


def test_cli_expand_fresh_name(capsys):
    code = main(
        ["expand", "--spec", str(SPECS / "dyck2.json"), "--expand", "b2", "--fresh", "c"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {
        "kind": "expanded",
        "base": {"kind": "dyck", "n": 2},
        "target": "b2",
        "fresh": "c",
    }


def test_cli_flowcheck_pass(capsys):
    code = main(
        ["flowcheck", "--spec", str(SPECS / "goldenmean.json"), "--depth", "5", "--expand", "1"]
    )
    assert code == 0
    assert "flow invariance: PASS" in capsys.readouterr().out


def test_cli_flowcheck_bracket_fixed_depth(capsys):
    code = main(
        ["flowcheck", "--spec", str(SPECS / "dyck2.json"), "--depth", "2", "--expand", "a1"]
    )
    assert code == 0
    assert "at this depth" in capsys.readouterr().out


def test_cli_flowcheck_budget_flag(capsys):
    code = main(
        [
            "flowcheck",
            "--spec", str(SPECS / "dyck2.json"),
            "--depth", "3",
            "--expand", "a1",
            "--budget", "50",
        ]
    )
    assert code == 3
    assert "inconclusive" in capsys.readouterr().err


def test_cli_budget_env_and_override(monkeypatch, capsys):
    monkeypatch.setenv("LGK_BUDGET", "50")
    argv = ["flowcheck", "--spec", str(SPECS / "dyck2.json"), "--depth", "2", "--expand", "a1"]
    assert main(argv) == 3
    capsys.readouterr()
    assert main(argv + ["--budget", "2000000"]) == 0


def test_cli_flowcheck_json(capsys):
    code = main(
        [
            "flowcheck",
            "--spec", str(SPECS / "full3.json"),
            "--depth", "4",
            "--expand", "0",
            "--format", "json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "pass"
    assert payload["base"]["stabilized"]["verdict"] == "yes"


def test_cli_export_dot(tmp_path):
    target = tmp_path / "system.dot"
    code = main(
        ["export-dot", "--spec", str(SPECS / "even_shift.json"), "--depth", "3", "--out", str(target)]
    )
    assert code == 0
    assert target.read_text().startswith("digraph system {")


def test_cli_invalid_inputs(tmp_path, capsys):
    assert main(["build", "--spec", str(tmp_path / "missing.json")]) == 2
    bogus = tmp_path / "bogus.json"
    bogus.write_text('{"kind": "mystery"}\n')
    assert main(["build", "--spec", str(bogus)]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["invariants", "--spec", str(broken)]) == 2
    assert main(["verify"]) == 2
    assert main(["expand", "--spec", str(SPECS / "goldenmean.json"), "--expand", "7"]) == 2
    capsys.readouterr()
