import io
import json
import subprocess
import sys

import pytest

from simplicia import catalog
from simplicia.cli import EXIT_NO, EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, EXIT_USAGE, run


def call(*argv):
    buf = io.StringIO()
    code, rep = run(list(argv), out=buf)
    return code, rep, buf.getvalue()


@pytest.fixture
def path():
    return lambda name: str(catalog.data_path(name))


def test_catalog_verify_cp2():
    code, rep, _ = call("catalog", "verify", "cp2_9")
    assert code == EXIT_OK and rep["results"]["verify"][0]["ok"]


def test_catalog_list():
    code, rep, text = call("catalog", "list")
    assert code == EXIT_OK and "k3_16" in text


def test_catalog_emit(tmp_path):
    out = tmp_path / "t.cplx"
    code, _, _ = call("catalog", "emit", "torus_7", "-o", str(out))
    assert code == EXIT_OK and out.read_text().count("\n") >= 14


def test_homology_text(path):
    code, _, text = call("homology", path("l3_12"))
    assert code == EXIT_OK and "H_1 = Z_3" in text


def test_iso_identity(path):
    code, rep, _ = call("--json", "iso", path("rp2_6"), path("rp2_6"))
    assert code == EXIT_OK


def test_iso_no(path):
    code, _, _ = call("iso", path("torus_7"), path("rp2_6"))
    assert code == EXIT_NO


def test_verify_non_manifold_exit_no(tmp_path):
    f = tmp_path / "fan.cplx"
    f.write_text("1 2 3\n1 2 4\n1 2 5\n")
    code, _, _ = call("verify", str(f))
    assert code == EXIT_NO


def test_reduce_locally_minimal_unknown(path):
    code, rep, _ = call("--json", "reduce", path("l3_12"))
    assert code == EXIT_UNKNOWN and rep["status"] == "unknown"


def test_reduce_trace_json(path):
    buf = io.StringIO()
    code, rep = run(["--json", "reduce", path("s3_8_36"), "--trace"], out=buf)
    doc = json.loads(buf.getvalue())
    assert code == EXIT_OK and doc["results"]["trace"][-1]["f"][0] == 5


def test_usage_errors():
    assert call()[0] == EXIT_USAGE
    assert call("nonsense")[0] == EXIT_USAGE
    assert call("construct", "cyclic", "3")[0] == EXIT_USAGE


def test_parse_errors(tmp_path):
    assert call("invariants", str(tmp_path / "missing.cplx"))[0] == EXIT_PARSE
    bad = tmp_path / "bad.cplx"
    bad.write_text("1 1 2\n")
    assert call("invariants", str(bad))[0] == EXIT_PARSE


def test_construct_and_invariants(tmp_path):
    out = tmp_path / "c.cplx"
    assert call("construct", "cyclic", "3", "7", "-o", str(out))[0] == EXIT_OK
    code, rep, _ = call("--json", "invariants", str(out))
    assert code == EXIT_OK and rep["results"]["invariants"]["f"] == [7, 21, 28, 14]


def test_construct_quotient(tmp_path, path):
    perm = tmp_path / "anti.perm"
    perm.write_text("(u v)(u1 v1)(u2 v2)(u3 v3)(u4 v4)(u5 v5)\n")
    out = tmp_path / "q.cplx"
    code, _, _ = call("construct", "quotient", path("icosahedron"), str(perm), "-o", str(out))
    assert code == EXIT_OK
    assert call("iso", str(out), path("rp2_6"))[0] == EXIT_OK


def test_link_and_moves(path):
    code, _, text = call("link", path("rp2_6"), "u")
    assert code == EXIT_OK and "u1 u2" in text
    code, rep, _ = call("--json", "moves", path("s3_8_38"))
    assert code == EXIT_OK


def test_bounds_exit(path):
    code, rep, _ = call("--json", "bounds", path("cp2_9"))
    assert code in (EXIT_OK, EXIT_NO)
    assert rep["results"]["dehn_sommerville"]["euler"] == 0


def test_enumerate(tmp_path):
    code, rep, _ = call("--json", "enumerate", "surfaces", "-n", "7", "--emit", str(tmp_path))
    assert code == EXIT_OK and rep["results"]["total"] == 9
    assert len(list(tmp_path.glob("*.cplx"))) == 9
    assert call("enumerate", "surfaces", "-n", "9")[0] == EXIT_USAGE


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "simplicia", "catalog", "list"], capture_output=True, text=True)
    assert p.returncode == 0 and "cp2_9" in p.stdout
