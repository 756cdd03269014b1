import json
import os

from dualcox.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_roots_json(capsys):
    code, out = run(capsys, "roots", "--type", "D", "--rank", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["roots"]) == 24 and data["simple"] == [0, 1, 2, 3]


def test_roots_text(capsys):
    code, out = run(capsys, "roots", "--type", "A", "--rank", "2")
    assert "6 roots" in out


def test_orbit(capsys):
    code, out = run(capsys, "orbit", "--type", "D", "--rank", "4", "--word", "0,1,2,3", "--coverage")
    data = json.loads(out)
    assert code == 0
    assert data["orbit_size"] == data["red_count"] == 162
    assert data["transitive"] is True and data["product_len"] == 4
    assert data["coverage"] == list(range(12))


def test_orbit_cap_exit_code(capsys):
    code, out = run(capsys, "--cap", "10", "orbit", "--type", "D", "--rank", "4", "--word", "0,1,2,3")
    assert code == 1 and json.loads(out)["transitive"] is None


def test_orbit_rejects_non_reduced(capsys):
    code, _ = run(capsys, "orbit", "--type", "A", "--rank", "2", "--word", "0,0")
    assert code == 2


def test_classify_signed(capsys):
    code, out = run(capsys, "classify", "--type", "B", "--rank", "4", "--signed=-1,-2,-3,-4")
    rec = json.loads(out)
    assert rec["transitive"] is False and rec["is_quasi_coxeter"] is False


def test_classify_word_and_element_agree(capsys):
    _, a = run(capsys, "classify", "--type", "A", "--rank", "3", "--word", "0,1,2")
    elem = json.loads(a)["element"]
    _, b = run(capsys, "classify", "--type", "A", "--rank", "3", "--element", ",".join(map(str, elem)))
    assert json.loads(a) == json.loads(b)


def test_lattice_ops(capsys):
    _, out = run(capsys, "lattice", "--type", "E", "--rank", "6", "--roots", "0,1,2,3,4,5", "--op", "cindex")
    assert json.loads(out)["connection_index"] == 3
    _, out = run(capsys, "lattice", "--type", "A", "--rank", "2", "--roots", "0,1")
    assert json.loads(out)["size"] == 6
    _, out = run(capsys, "lattice", "--type", "D", "--rank", "4", "--roots", "0,1,2,3", "--op", "index")
    assert json.loads(out)["index"] == 1


def test_dn_intersections(capsys):
    code, out = run(capsys, "dn-intersections", "--rank", "6")
    assert json.loads(out)["all_nontrivial"] is True


def test_verify_writes_files(capsys, tmp_path):
    code, out = run(capsys, "verify", "--theorem", "1", "--type", "B", "--rank", "3", "--out", str(tmp_path))
    assert code == 0 and "PASS" in out
    names = sorted(os.listdir(tmp_path))
    assert names == ["theorem-1-B3.csv", "theorem-1-B3.json", "theorem-1-B3.png"]
    with open(tmp_path / "theorem-1-B3.csv") as fh:
        assert len(fh.read().splitlines()) == 49
    assert (tmp_path / "theorem-1-B3.png").stat().st_size > 1000


def test_verify_json_and_global_option_position(capsys):
    _, a = run(capsys, "--json", "verify", "--theorem", "table")
    _, b = run(capsys, "verify", "--theorem", "table", "--json")
    assert a == b and json.loads(a)["success"] is True


def test_verify_failure_exit_code(capsys):
    code, _ = run(capsys, "verify", "--theorem", "1", "--type", "D", "--rank", "4", "--cap", "5")
    assert code == 1


def test_verify_missing_rank(capsys):
    assert run(capsys, "verify", "--theorem", "1", "--type", "A")[0] == 2


def test_bad_type(capsys):
    assert run(capsys, "roots", "--type", "Q", "--rank", "3")[0] == 2
