import json
import subprocess
import sys

import pytest

from volpres.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def poly(n, terms):
    return {"nvars": n, "terms": [{"coeff": c, "exp": e} for e, c in terms]}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_symbol_normalization(tmp_path, capsys):
    op = write(tmp_path, "n.json", {"builtin": "normalization", "params": {"kappa": [2]}})
    code, out, err = run(["symbol", op], capsys)
    assert code == 0
    assert json.loads(out) == poly(2, [([0, 2], "1"), ([1, 1], "2"), ([2, 0], "1/2")])
    assert "degree 2" in err


def test_symbol_identity_to_file(tmp_path, capsys):
    op = write(tmp_path, "id.json", {"builtin": "identity", "params": {"kappa": [1, 1]}})
    dest = tmp_path / "sym.json"
    code, out, _ = run(["symbol", op, "--out", str(dest)], capsys)
    assert code == 0 and out == ""
    terms = json.loads(dest.read_text())["terms"]
    assert len(terms) == 4 and all(t["coeff"] == "1" for t in terms)


def test_symbol_shift_violation(tmp_path, capsys):
    bad = {
        "kappa": [1],
        "shift": 0,
        "images": [
            {"alpha": [0], "poly": poly(1, [([0], "1")])},
            {"alpha": [1], "poly": poly(1, [([2], "1")])},
        ],
    }
    code, _, err = run(["symbol", write(tmp_path, "bad.json", bad)], capsys)
    assert code == 1 and "alpha=[1]" in err


def test_max_kappa(tmp_path, capsys):
    op = write(tmp_path, "n.json", {"builtin": "normalization", "params": {"kappa": [3]}})
    assert run(["symbol", op, "--max-kappa", "2"], capsys)[0] == 1


def test_apply_via_symbol(tmp_path, capsys):
    d1 = {"builtin": "diff_op", "params": {"kappa": [1, 1], "s": poly(2, [([1, 0], "1")])}}
    f = poly(2, [([1, 1], "1")])
    code, out, err = run(["apply", write(tmp_path, "d.json", d1), write(tmp_path, "f.json", f), "--via-symbol"], capsys)
    assert code == 0 and json.loads(out) == poly(2, [([0, 1], "1")])
    assert "agrees" in err


def test_apply_normalization(tmp_path, capsys):
    op = write(tmp_path, "n.json", {"builtin": "normalization", "params": {"kappa": [2]}})
    f = write(tmp_path, "f.json", poly(1, [([2], "1")]))
    code, out, _ = run(["apply", op, f], capsys)
    assert code == 0 and json.loads(out) == poly(1, [([2], "1/2")])


def test_apply_truncation_pipeline(tmp_path, capsys):
    op = write(tmp_path, "t.json", {"builtin": "trunc_upper", "params": {"kappa": [2, 2], "gamma": [1, 2]}})
    f = write(tmp_path, "f.json", poly(2, [([2, 0], "1"), ([1, 1], "3"), ([0, 2], "1")]))
    code, out, _ = run(["apply", op, f], capsys)
    assert code == 0 and json.loads(out) == poly(2, [([0, 2], "1"), ([1, 1], "3")])


def test_apply_input_errors(tmp_path, capsys):
    op = write(tmp_path, "n.json", {"builtin": "normalization", "params": {"kappa": [1]}})
    outside = write(tmp_path, "f.json", poly(1, [([2], "1")]))
    assert run(["apply", op, outside], capsys)[0] == 1
    assert run(["apply", op, str(tmp_path / "missing.json")], capsys)[0] == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["apply", op, str(broken)], capsys)[0] == 1


def test_apply_oracle_mismatch(tmp_path, capsys, monkeypatch):
    from volpres import operators

    monkeypatch.setattr(operators, "apply_via_symbol", lambda T, f: f.scale(2))
    op = write(tmp_path, "n.json", {"builtin": "identity", "params": {"kappa": [1]}})
    f = write(tmp_path, "f.json", poly(1, [([1], "1")]))
    assert run(["apply", op, f, "--via-symbol"], capsys)[0] == 3


def test_certify_codes(tmp_path, capsys):
    b = write(tmp_path, "b.json", poly(3, [([1, 1, 0], "1"), ([1, 0, 1], "1"), ([0, 1, 1], "1")]))
    code, out, _ = run(["certify", b], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "certified"
    q = write(tmp_path, "q.json", poly(2, [([2, 0], "1"), ([0, 2], "1")]))
    code, out, _ = run(["certify", q], capsys)
    report = json.loads(out)
    assert code == 2 and report["stage"] == "hessian" and "hessian" in report["witness"]
    inh = write(tmp_path, "i.json", poly(2, [([1, 0], "1"), ([0, 2], "1")]))
    assert run(["certify", inh], capsys)[0] == 1


def test_certify_rejects_float_literal(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text('{"nvars": 1, "terms": [{"coeff": 0.5, "exp": [1]}]}')
    assert run(["certify", str(path)], capsys)[0] == 1


def square():
    return {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}


def test_mixedvol(tmp_path, capsys):
    seg = {"dim": 2, "vertices": [["0", "0"], ["1", "0"]]}
    code, out, _ = run(["mixedvol", write(tmp_path, "k.json", [square(), seg])], capsys)
    assert code == 0 and json.loads(out) == poly(2, [([1, 1], "1"), ([2, 0], "1")])
    tri = {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]]}
    code, out, _ = run(["mixedvol", write(tmp_path, "ts.json", {"polytopes": [tri, square()]})], capsys)
    assert json.loads(out) == poly(2, [([0, 2], "1"), ([1, 1], "2"), ([2, 0], "1/2")])
    cube = {"dim": 3, "vertices": [[str(a), str(b), str(c)] for a in (0, 1) for b in (0, 1) for c in (0, 1)]}
    code, out, _ = run(["mixedvol", write(tmp_path, "c.json", [cube])], capsys)
    assert json.loads(out) == poly(1, [([3], "1")])
    assert run(["mixedvol", write(tmp_path, "bad.json", [square(), cube])], capsys)[0] == 1


def test_matroid(tmp_path, capsys):
    u23 = write(tmp_path, "u.json", {"n": 3, "r": 2, "bases": [[1, 2], [1, 3], [2, 3]]})
    code, out, _ = run(["matroid", u23, "--which", "B"], capsys)
    assert code == 0 and json.loads(out) == poly(3, [([0, 1, 1], "1"), ([1, 0, 1], "1"), ([1, 1, 0], "1")])
    code, out, err = run(["matroid", u23, "--which", "ext", "--m", "10"], capsys)
    assert code == 0 and "1/20" in err
    assert run(["matroid", u23, "--which", "ext"], capsys)[0] == 1
    rank0 = write(tmp_path, "z.json", {"vectors": {"columns": [["0", "0"]]}})
    code, out, _ = run(["matroid", rank0, "--which", "I"], capsys)
    assert json.loads(out) == poly(2, [([0, 0], "1")])
    code, out, _ = run(["matroid", u23, "--which", "NI"], capsys)
    assert {"coeff": "1/2", "exp": [0, 0, 0, 2]} in json.loads(out)["terms"]


def test_verify(tmp_path, capsys):
    dest = tmp_path / "summary.json"
    code, out, _ = run(["verify", "fourdivisor", "--out", str(dest)], capsys)
    assert code == 0 and "[PASS] fourdivisor" in out
    assert json.loads(dest.read_text())["suites"][0]["passed"] is True
    assert run(["verify", "nonsense"], capsys)[0] == 1
    code, out, _ = run(["verify", "lemma312"], capsys)
    assert code == 0 and "[PASS] fourdivisor" in out


def test_verify_symbols_small(capsys, monkeypatch):
    monkeypatch.setenv("VOLPRES_SUITE_SCALE", "small")
    code, out, _ = run(["verify", "symbols", "--max-kappa", "1"], capsys)
    assert code == 0 and "[PASS] symbols" in out


def test_verify_oracle_small(capsys, monkeypatch):
    monkeypatch.setenv("VOLPRES_SUITE_SCALE", "small")
    code, out, _ = run(["verify", "oracle", "--seed", "5"], capsys)
    assert code == 0


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1


def test_module_entry_point(tmp_path):
    op = write(tmp_path, "n.json", {"builtin": "normalization", "params": {"kappa": [2]}})
    done = subprocess.run([sys.executable, "-m", "volpres", "symbol", op], capture_output=True, text=True)
    assert done.returncode == 0 and json.loads(done.stdout)["nvars"] == 2
