import json

import pytest

from cliffbn import claims
from cliffbn.cli import main
from cliffbn.claims import REGISTRY, Config, UnknownClaim, run


def test_registry_shape():
    assert len(REGISTRY) >= 27
    assert all(f"CLM-{i:02d}" in REGISTRY for i in range(1, 28))
    assert REGISTRY["CLM-18"].quote == "of order 743 178 240"
    assert REGISTRY["CLM-22"].scale_for(Config(exhaustive=True)) == "opt-in-heavy"
    assert all(c.scale in claims.SCALES for c in REGISTRY.values())
    assert any(c.check(Config()).verdict == "unverified-out-of-scope"
               for c in REGISTRY.values() if c.id in ("CLM-30", "CLM-31", "CLM-32"))


def test_unknown_claim():
    with pytest.raises(UnknownClaim):
        run(["CLM-404"])


def test_instant_claims():
    reps = run(["CLM-01", "CLM-24", "CLM-27"])
    assert [r.verdict for r in reps] == ["verified"] * 3
    assert reps[0].values == {"order": 192}


def test_reports_deterministic():
    def strip(rs):
        return [{k: v for k, v in r.to_dict().items() if k != "elapsed_ms"} for r in rs]
    ids = ["CLM-01", "CLM-09", "CLM-17", "CLM-24", "CLM-27"]
    a = json.dumps(strip(run(ids)), sort_keys=True)
    claims._surface.cache_clear()
    b = json.dumps(strip(run(ids)), sort_keys=True)
    assert a == b


def test_budget_is_reported_not_raised():
    r = run(["CLM-02"], Config(budget=100))[0]
    assert r.error and "BudgetExceeded" in r.error


def test_report_schema():
    r = run(["CLM-01"], Config(seed=5))[0].to_dict()
    assert {"claim_id", "quote", "verdict", "values", "witnesses", "elapsed_ms", "seed"} <= set(r)
    assert r["seed"] == 5


def test_cli_exit_codes(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "CLM-01", "CLM-24", "--report", str(out)]) == 0
    data = json.loads(out.read_text())
    assert [d["claim_id"] for d in data] == ["CLM-01", "CLM-24"]
    assert main(["verify", "CLM-12", "--report", str(tmp_path / "r.md")]) == 1
    assert (tmp_path / "r.md").read_text().startswith("| claim")
    assert main(["verify", "CLM-999"]) == 2
    assert main(["verify", "CLM-02", "--budget", "10"]) == 2
    assert main(["list"]) == 0
    assert "of order 743 178 240" in capsys.readouterr().out


def test_cli_cache(tmp_path):
    assert main(["verify", "CLM-02", "--cache-dir", str(tmp_path)]) == 0
    assert main(["cache", "check", "--cache-dir", str(tmp_path)]) == 0
    (tmp_path / "C2.cbnv").write_bytes((tmp_path / "C2.cbnv").read_bytes()[:100])
    assert main(["cache", "check", "--cache-dir", str(tmp_path)]) == 2


def test_cli_lines_and_pair(capsys):
    assert main(["lines", "--format", "dot"]) == 0
    assert capsys.readouterr().out.count("--") == 135
    assert main(["pair", "gl2f2-toy"]) == 0
    assert json.loads(capsys.readouterr().out)["axiom_i"]["holds"]
