import io
import json
import subprocess
import sys

import pytest

from conjstab import errors
from conjstab.cli import CliConfig, run
from conjstab.coxgraph import catalog


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_w0_text():
    assert call("w0", "--type", "A3") == (0, "s1->s3 s2->s2 s3->s1\n")
    code, text = call("w0", "--type", "E6", "--subset", "s2,s4,s5")
    assert code == 0 and text == "s2->s5 s4->s4 s5->s2\n"


def test_star_json():
    code, text = call("star", "--type", "E6", "--subset", "s2,s3,s4,s5,s6")
    data = json.loads(text)
    assert code == 0 and data["holds"] is False
    assert data["witness"]["certificate"]["kind"] == "ExhaustiveEnumeration"


def test_star_x_type_lists_placements():
    code, text = call("star", "--type", "E6", "--x-type", "D5")
    data = json.loads(text)
    assert code == 0 and len(data) == 2 and not any(v["holds"] for v in data)


def test_ribbon_and_reach():
    assert call("ribbon", "--type", "E6", "-t", "s1", "-Z", "s2,s3,s4") == (0, "s2->s4 s3->s1 s4->s3\n")
    code, text = call("reach", "--type", "E7", "-Y", "s1,s3,s4,s5,s6", "--adjacent-only", "--output", "json")
    data = json.loads(text)
    assert code == 0
    assert data["targets"] == [["s1", "s3", "s4", "s5", "s6"], ["s3", "s4", "s5", "s6", "s7"]]
    assert len(data["arrows"]) == 4


def test_recognize():
    code, text = call("recognize", "--type", "H3xA1")
    assert code == 0 and text.splitlines()[0] == "H3xA1"


def test_recognize_graph_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"vertices": ["u", "v", "w"], "edges": [["w", "v", 4], ["u", "v"]]}))
    code, text = call("recognize", "--graph", str(path), "--output", "json")
    data = json.loads(text)
    assert code == 0 and data["components"][0]["type"] == "B3"
    assert data["components"][0]["relabel"] == {"w": "s1", "v": "s2", "u": "s3"}


def test_exit_codes():
    assert call("star", "--type", "Q7", "--subset", "s1")[0] == 2
    assert call("star", "--type", "A3", "--subset", "s9")[0] == 2
    assert call("star", "--type", "A3", "--subset", "s1,s2,s3")[0] == 2
    assert call("ribbon", "--type", "A3", "-t", "s1", "-Z", "s1")[0] == 2
    assert call("bogus")[0] == 2
    assert call("sweep", "--max-rank", "0")[0] == 2
    assert call("star", "--type", "E7", "--subset", "s1", "--strategy", "oracle", "--cap", "100")[0] == 3
    assert call("star", "--type", "A3", "--subset", "s1", "--cap", "0")[0] == 2


def test_json_output_is_byte_identical():
    a = call("sweep", "--types", "A4,D4", "--output", "json")
    b = call("sweep", "--types", "A4,D4", "--output", "json")
    assert a == b and a[0] == 0
    a = call("star", "--type", "H4", "--subset", "s1,s2,s3")
    assert a == call("star", "--type", "H4", "--subset", "s1,s2,s3")


def test_sweep_tsv_columns():
    code, text = call("sweep", "--types", "B3")
    lines = text.splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["type", "X", "X_component_types", "decided", "expected",
                                    "rule_fired", "strategy", "time_ms"]
    assert len(lines) == 1 + 6


def test_oracle_and_ribbon_sweeps_agree_rank_6():
    _, a = call("sweep", "--max-rank", "6", "--strategy", "Oracle", "--cap", "60000", "--output", "json")
    _, b = call("sweep", "--max-rank", "6", "--strategy", "Ribbon", "--output", "json")
    ra, rb = json.loads(a)["rows"], json.loads(b)["rows"]
    assert len(ra) == len(rb)
    compared = 0
    for x, y in zip(ra, rb):
        assert (x["type"], x["X"]) == (y["type"], y["X"])
        if not x["skipped"] and not y["skipped"]:
            compared += 1
            assert x["decided"] == y["decided"]
    # every catalog type of rank <= 6 has |W| <= 60000, so nothing is skipped
    assert compared == len(ra) == sum(2 ** t.rank - 2 for t in catalog(6, 12))


def test_config_file(tmp_path):
    cfg = CliConfig(enumeration_cap=100, strategy="Oracle", output="text")
    assert CliConfig.from_json(cfg.to_json()) == cfg
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    assert call("star", "--type", "E6", "--subset", "s1", "--config", str(path))[0] == 3
    # flags override the file
    code, text = call("star", "--type", "A3", "--subset", "s1,s3", "--config", str(path), "--cap", "1000")
    assert code == 0 and text.startswith("X=s1,s3\tfails")
    with pytest.raises(errors.InvalidInput):
        CliConfig.from_json('{"colour": 1}')
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("w0", "--type", "A2", "--config", str(bad))[0] == 2


def test_verify_paper(tmp_path):
    junit = tmp_path / "report.xml"
    code, text = call("verify-paper", "--junit", str(junit))
    assert code == 0
    assert text.strip().endswith("checks passed")
    assert "FAIL" not in text
    assert junit.read_text().startswith("<testsuite")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conjstab.cli", "w0", "--type", "A3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "s1->s3 s2->s2 s3->s1\n"
