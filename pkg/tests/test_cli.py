import io
import json
import subprocess
import sys

import pytest

from minkowski_weights.cli import run_cli
from minkowski_weights.field import parse_scalar


def run(*argv):
    buf = io.StringIO()
    code = run_cli(list(argv), stdout=buf)
    return code, buf.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    paths = {}
    for name in ("tetrahedron", "octahedron", "icosahedron"):
        paths[name] = d / f"{name}.txt"
        assert run("polytope", name, "--out", str(paths[name]))[0] == 0
    for tag, extra in (("left", ["--panel", "left"]), ("printed", ["--panel", "right", "--alpha", "printed"]),
                       ("corrected", ["--panel", "right"])):
        code, text = run("figure", *extra, "--format", "weight")
        assert code == 0
        paths[tag] = d / f"{tag}.w"
        paths[tag].write_text(text)
    paths["dir"] = d
    return paths


def test_dim(files):
    assert run("dim", "--skeleton", str(files["tetrahedron"])) == (0, "1\n")
    assert run("dim", "--skeleton", str(files["icosahedron"])) == (0, "9\n")
    code, text = run("--records", "dim", "--skeleton", str(files["octahedron"]))
    assert records(text) == [{"kind": "dimension", "dimension": 3}]


def test_check_left_is_balanced(files):
    assert run("check", "--skeleton", str(files["icosahedron"]), "--weight", str(files["left"])) == (0, "balanced\n")


def test_check_printed_alpha_reports_four_rays(files):
    code, text = run("check", "--skeleton", str(files["icosahedron"]), "--weight", str(files["printed"]))
    assert code == 1
    lines = text.splitlines()
    assert lines[0] == "unbalanced at 4 rays"
    assert sum(l.startswith("residual ") for l in lines) == 4


def test_check_corrected_alpha(files):
    assert run("check", "--skeleton", str(files["icosahedron"]), "--weight", str(files["corrected"]))[0] == 0


def test_records_carry_same_values_as_text(files):
    args = ("check", "--skeleton", str(files["icosahedron"]), "--weight", str(files["printed"]))
    _, text = run(*args)
    _, rec = run("--records", *args)
    recs = records(rec)
    assert recs[0]["kind"] == "verdict" and recs[0]["balanced"] is False
    from_text = {}
    for line in text.splitlines()[1:]:
        _, v, body = line.split(" ", 2)
        from_text[v] = [parse_scalar(x) for x in body.strip("()").split(", ")]
    from_records = {r["vertex"]: [parse_scalar(x) for x in r["residual"]] for r in recs[1:]}
    assert from_text == from_records
    assert recs[0]["failing"] == list(from_records)


def test_approx_hints(files):
    _, text = run("--approx", "6", "check", "--skeleton", str(files["icosahedron"]), "--weight", str(files["printed"]))
    assert "# ~(" in text
    assert run("--approx", "0", "dim", "--skeleton", str(files["tetrahedron"]))[0] == 2


def test_usage_errors(capsys):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("dim")[0] == 2
    assert run("figure", "--panel", "middle")[0] == 2


def test_input_errors(files, capsys):
    bad = files["dir"] / "bad.txt"
    bad.write_text("field sqrt5\nv a 1 0\n")
    assert run("dim", "--skeleton", str(bad))[0] == 3
    assert "bad.txt:2:1:" in capsys.readouterr().err
    zero = files["dir"] / "zero.txt"
    zero.write_text("field sqrt5\nv o 0 0 0\nv p 1 0 0\ne o p\n")
    assert run("dim", "--skeleton", str(zero))[0] == 3
    assert "zero ray: o" in capsys.readouterr().err
    assert run("dim", "--skeleton", str(files["dir"] / "missing.txt"))[0] == 3
    partial = files["dir"] / "partial.w"
    partial.write_text("\n".join(files["left"].read_text().splitlines()[:-1]) + "\n")
    assert run("check", "--skeleton", str(files["icosahedron"]), "--weight", str(partial))[0] == 3


def test_solve(files):
    code, text = run("solve", "--skeleton", str(files["icosahedron"]))
    assert code == 0 and text.startswith("feasible dimension 9\n")
    octa = str(files["octahedron"])
    edge = records(run("--records", "basis", "--skeleton", octa)[1])[1]["weights"]
    first = next(iter(edge))
    assert run("solve", "--skeleton", octa, "--zero", first)[0] == 0
    pins = files["dir"] / "pins"
    a, b = first.split(":")
    pins.write_text(f"w {a} {b} 1\n")
    assert run("solve", "--skeleton", octa, "--pin", str(pins), "--zero", first) == (1, "infeasible\n")


def test_scan_support(files):
    code, text = run("scan-support", "--skeleton", str(files["octahedron"]), "--workers", "1")
    assert code == 0
    assert text.splitlines()[-1] == "# 0/12 edges admit a weight vanishing exactly there"
    code, text = run("--records", "scan-support", "--skeleton", str(files["tetrahedron"]), "--workers", "1")
    assert records(text)[-1] == {"kind": "summary", "feasible": 0, "edges": 6}


def test_figure_formats_and_notice(capsys):
    code, text = run("figure", "--panel", "left")
    assert code == 0 and "\\begin{scope}" in text
    assert capsys.readouterr().err == ""
    code, text = run("figure", "--panel", "right", "--format", "dot", "--alpha", "printed")
    assert code == 0 and text.startswith("graph")
    err = capsys.readouterr().err
    assert "does not balance (4 failing rays" in err
    assert "using printed alpha = 3/2+1/2r5" in err


def test_deterministic(files):
    args = ("--records", "basis", "--skeleton", str(files["icosahedron"]))
    assert run(*args) == run(*args)


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "minkowski_weights", "dim", "--skeleton", str(files["tetrahedron"])],
        capture_output=True, text=True, check=False,
    )
    assert (proc.returncode, proc.stdout) == (0, "1\n")
