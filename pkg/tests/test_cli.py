from __future__ import annotations

import json
from fractions import Fraction

import pytest

from turan34.cli import main
from turan34.constructions import I34, M2, balanced_spec, kostochka_orgraph
from turan34.flags import FlagCertificate
from turan34.hypergraph import format_3graph, is_isomorphic, parse_3graph
from turan34.orgraph import parse_orgraph


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "m2.3graph").write_text(format_3graph(M2))
    (tmp_path / "i34.3graph").write_text(format_3graph(I34))
    return tmp_path


def test_catalog_m2(capsys):
    status, out, _ = run(capsys, "catalog", "M2")
    assert status == 0
    g = parse_3graph(out)
    assert (g.n, g.num_edges) == (6, 6) and g == M2
    assert "FMT_VERSION" in out


def test_catalog_listing_and_unknown(capsys):
    status, out, _ = run(capsys, "catalog")
    assert status == 0 and "M2" in out and "I34" in out
    status, _, err = run(capsys, "catalog", "nope")
    assert status == 2 and "error" in err


def test_realize_singular_and_regular(capsys, files):
    status, out, _ = run(capsys, "realize", "--in", str(files / "i34.3graph"))
    assert (status, out.strip()) == (1, "SINGULAR")
    status, out, _ = run(capsys, "realize", "--in", str(files / "m2.3graph"))
    assert status == 0 and parse_orgraph(out).n == 6


def test_density(capsys, files):
    status, out, _ = run(capsys, "density", "--h", "RHO", "--g", str(files / "m2.3graph"))
    assert (status, out.strip()) == (0, "3/10")


def test_construct_round_trips(capsys):
    status, out, _ = run(capsys, "construct", "kostochka", "--heights", "a:1,2;b:1,2;c:1,2", "--strict")
    assert status == 0 and parse_3graph(out) == M2
    status, out, _ = run(capsys, "construct", "kostochka", "--balanced", "2", "--orgraph")
    assert parse_orgraph(out) == kostochka_orgraph(balanced_spec(2))
    status, _, err = run(capsys, "construct", "kostochka", "--heights", "a:1;b:-1;c:2")
    assert status == 2 and "error" in err


def test_verify_missing(capsys):
    status, out, _ = run(capsys, "verify", "missing", "--balanced", "3")
    assert status == 0 and "subsets_scanned\t126" in out and out.strip().endswith("OK")


def test_classify_table(capsys):
    status, out, _ = run(capsys, "classify", "--size", "4")
    assert status == 0
    assert out.splitlines()[0].split("\t") == ["key", "verdict", "edges", "witness"]
    assert "# regular 4 singular 1" in out
    _, out, _ = run(capsys, "classify", "--size", "5", "--forbid", "I34")
    assert "# regular 23 singular 0" in out


def test_exmin_m2(capsys, tmp_path):
    status, out, _ = run(capsys, "exmin", "--n", "6", "--all-witnesses", "--witness-dir", str(tmp_path))
    assert status == 0
    header, row = out.strip().splitlines()
    rec = dict(zip(header.split("\t"), row.split("\t")))
    assert rec["ex_min"] == "6" and rec["witnesses"] == "1" and rec["exact"] == "yes"
    written = sorted(tmp_path.glob("*.3graph"))
    assert len(written) == 1 and is_isomorphic(parse_3graph(written[0].read_text()), M2)


def test_exmin_json_and_table(capsys):
    _, out, _ = run(capsys, "--json", "exmin", "--n", "6")
    doc = json.loads(out)
    assert doc["ex_min"] == 6 and doc["density"] == "3/10"
    _, out, _ = run(capsys, "exmin", "--n", "7", "--table")
    assert [ln.split("\t")[2] for ln in out.strip().splitlines()[1:]] == ["1", "3", "6", "12"]


def test_exmin_budget_exit(capsys):
    status, out, _ = run(capsys, "exmin", "--n", "10", "--budget", "50")
    assert status == 3 and "\tno\t" in out


def test_exmin_cnf(capsys, tmp_path):
    path = tmp_path / "f.cnf"
    status, _, _ = run(capsys, "exmin", "--n", "5", "--emit-cnf", str(path), "--cnf-edges", "3")
    assert status == 0 and any(ln.startswith("p cnf") for ln in path.read_text().splitlines())
    status, out, _ = run(capsys, "fmt-check", str(path))
    assert status == 0 and "cnf" in out


def test_extract(capsys, files, tmp_path):
    status, out, _ = run(capsys, "extract", "--host", str(files / "m2.3graph"), "--pairs", "1,2;3,4")
    assert status == 0 and out.strip().endswith("REALIZES")
    host = tmp_path / "k.3graph"
    _, text, _ = run(capsys, "construct", "kostochka", "--heights", "a:1,2;b:1,2;c:1,2")
    host.write_text(text)
    status, out, _ = run(capsys, "extract", "search", "--host", str(host), "--ell", "3", "--seed", "5")
    assert status == 0 and "REALIZES" in out
    status, _, _ = run(capsys, "extract", "search", "--host", str(host), "--ell", "3", "--budget", "1")
    assert status == 3


def test_flag_zero_verify_and_round_trip(capsys, tmp_path):
    cert = tmp_path / "z.json"
    status, _, _ = run(capsys, "flag", "zero", "--ell", "4", "--out", str(cert))
    assert status == 0
    parsed = FlagCertificate.from_json(cert.read_text())
    assert FlagCertificate.from_json(parsed.to_json()) == parsed
    status, out, _ = run(capsys, "flag", "verify", "--cert", str(cert))
    assert status == 0 and out.startswith("ACCEPTED") and "bound\t1/4" in out


def test_flag_verify_rejects(capsys, tmp_path):
    doc = json.loads(_zero_json(capsys, tmp_path))
    doc["bound"] = "1/3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    status, out, _ = run(capsys, "flag", "verify", "--cert", str(bad))
    assert status == 1 and out.startswith("REJECTED")


def _zero_json(capsys, tmp_path):
    path = tmp_path / "zz.json"
    run(capsys, "flag", "zero", "--ell", "5", "--out", str(path))
    return path.read_text()


def test_flag_pipeline(capsys, tmp_path):
    pytest.importorskip("cvxpy")
    prob, sol, cert = tmp_path / "p.dat-s", tmp_path / "sol.txt", tmp_path / "c.json"
    assert run(capsys, "flag", "export", "--ell", "4", "--types", "0,1,2", "--out", str(prob))[0] == 0
    assert (tmp_path / "p.dat-s.json").exists()
    status, out, _ = run(capsys, "flag", "solve", "--in", str(prob), "--out", str(sol))
    objective = float(out.split()[-1])
    assert status == 0
    status, _, _ = run(capsys, "flag", "round", "--in", str(sol), "--problem", str(prob) + ".json",
                       "--den", "10000", "--out", str(cert))
    assert status == 0
    status, out, _ = run(capsys, "flag", "verify", "--cert", str(cert))
    bound = Fraction(out.split("bound\t")[1].split()[0])
    assert status == 0 and abs(float(bound) - objective) < 1e-3


def test_fmt_check_diagnostics(capsys, tmp_path):
    bad = tmp_path / "bad.3graph"
    bad.write_text("3graph 4 1\n1 2 9\n")
    status, out, _ = run(capsys, "fmt-check", str(bad))
    assert status == 1 and "line 2" in out
    status, _, err = run(capsys, "realize", "--in", str(bad))
    assert status == 2 and "line 2" in err


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "exmin")[0] == 2
    assert run(capsys, "realize", "--in", "/nonexistent/file")[0] == 2


def test_manifest(capsys, tmp_path, files):
    path = tmp_path / "run.json"
    g = str(files / "m2.3graph")
    run(capsys, "--manifest", str(path), "density", "--h", "RHO", "--g", g)
    man = json.loads(path.read_text())
    assert man["subcommand"] == "density" and man["exit_status"] == 0
    assert g in man["inputs"] and len(man["result_digest"]) == 64
    _, _, err = run(capsys, "density", "--h", "RHO", "--g", g)
    assert json.loads(err.strip().splitlines()[-1])["result_digest"] == man["result_digest"]


@pytest.mark.parametrize("argv", [
    ["exmin", "--n", "7", "--table"],
    ["classify", "--size", "5"],
    ["flag", "flags", "--ell", "5"],
])
def test_thread_count_does_not_change_output(capsys, argv):
    outs = {run(capsys, "--threads", str(t), *argv)[1] for t in (1, 4)}
    assert len(outs) == 1
