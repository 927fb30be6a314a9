import io
import json
import subprocess
import sys

import pytest

from terrain_lit.bench import BenchConfig, bench, loglog_slope, normalized_list_sizes, to_csv
from terrain_lit.cli import RunConfig, main, rational_str, run
from terrain_lit.render import RenderOptions, render_svg
from terrain_lit.terrain import parse_terrain

from conftest import T1_TEXT, T3_TEXT


def call(cfg, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(cfg, io.StringIO(stdin_text), out, err)
    return code, out.getvalue(), err.getvalue()


def cli(*args, stdin=""):
    return subprocess.run(
        [sys.executable, "-m", "terrain_lit.cli", *args], input=stdin, capture_output=True, text=True
    )


def test_rational_str():
    from fractions import Fraction

    assert rational_str(Fraction(6, 4)) == "3/2"
    assert rational_str(Fraction(-4, 2)) == "-2"


def test_solve_json_t1():
    code, out, _ = call(RunConfig("solve", "-", output="json"), T1_TEXT)
    d = json.loads(out)
    assert code == 0
    assert d["area"] == {"num": "25", "den": "1", "approx": 25.0}
    assert d["case"] == "whole_terrain" and d["n"] == 3 and d["timings_ms"] == {}
    assert len(d["triangle"]) == 3


def test_solve_t3_text_and_file(tmp_path):
    f = tmp_path / "t3.txt"
    f.write_text(T3_TEXT)
    code, out, _ = call(RunConfig("solve", str(f)))
    assert code == 0 and out.startswith("area 18 ")
    assert "apex (7, 6)" in out and "case boundary_apex" in out


def test_solve_output_byte_identical():
    a = call(RunConfig("solve", "-", output="json"), T3_TEXT)[1]
    b = call(RunConfig("solve", "-", output="json"), T3_TEXT)[1]
    assert a == b


def test_timings_only_on_request():
    d = json.loads(call(RunConfig("solve", "-", output="json", timings=True), T3_TEXT)[1])
    assert set(d["timings_ms"]) >= {"boundary", "interior"}


def test_gen_solve_oracle_pipeline():
    code, text, _ = call(RunConfig("gen", n=12, seed=5, profile="spiky"))
    assert code == 0
    s = json.loads(call(RunConfig("solve", "-", output="json"), text)[1])
    o = json.loads(call(RunConfig("oracle", "-", output="json"), text)[1])
    assert (s["area"]["num"], s["area"]["den"]) == (o["area"]["num"], o["area"]["den"])
    assert o["candidates_examined"] > 0


def test_gen_deterministic():
    assert call(RunConfig("gen", n=30, seed=2))[1] == call(RunConfig("gen", n=30, seed=2))[1]


def test_validate_exit_codes():
    assert call(RunConfig("validate", "-"), T3_TEXT)[0] == 0
    code, _, err = call(RunConfig("validate", "-"), "4\n0 0\n10 0\n5 3\n5 6\n")
    assert code == 1 and "VerticalEdge" in err
    code, _, err = call(RunConfig("solve", "-"), "3\n0 0\n1\n")
    assert code == 1


def test_usage_errors():
    assert call(RunConfig("solve"))[0] == 2
    assert call(RunConfig("solve", "/nonexistent/terrain.txt"))[0] == 2
    assert call(RunConfig("gen", n=5))[0] == 2
    assert call(RunConfig("frobnicate"))[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["gen", "-n", "5"])
    assert e.value.code == 2


def test_main_subprocess():
    r = cli("solve", "-", "--json", stdin=T3_TEXT)
    assert r.returncode == 0 and json.loads(r.stdout)["area"]["num"] == "18"


def test_debug_monotonicity_clean():
    code, text, _ = call(RunConfig("gen", n=40, seed=3, profile="uniform"))
    code, _, err = call(RunConfig("solve", "-", debug_monotonicity=True), text)
    assert code == 0 and err == ""


def test_dump_spt_and_hst():
    d = json.loads(call(RunConfig("dump", "-", dump="spt"), T3_TEXT)[1])
    assert d["coordinates"] == "normal" and set(d["trees"]) == {"L", "R"}
    assert len(d["prolongations"]["L"]) == 1
    h = json.loads(call(RunConfig("dump", "-", dump="hst"), T3_TEXT)[1])
    assert h["leaves"] > 0 and h["sum_list_sizes"] >= 2
    assert call(RunConfig("dump", "-"), T3_TEXT)[0] == 2


def test_render_layers_and_determinism(tmp_path):
    t = parse_terrain(T3_TEXT)
    svg = render_svg(t)
    assert svg.count("<g id=") >= 5
    for layer in ("terrain", "base", "tree_L", "tree_R", "prolongations_L", "backward_R"):
        assert f'<g id="{layer}">' in svg
    assert render_svg(t) == svg
    bare = render_svg(t, opts=RenderOptions(trees=False, backward=False))
    assert 'id="tree_L"' not in bare and 'id="backward_L"' not in bare
    path = tmp_path / "out.svg"
    code, _, _ = call(RunConfig("render", "-", svg=str(path)), T3_TEXT)
    assert code == 0 and 'id="triangle"' in path.read_text()


def test_bench_small(tmp_path):
    rows = bench(BenchConfig(sizes=(64, 128, 256), reps=1, seed=0))
    text = to_csv(rows)
    assert text.splitlines()[0] == "n,time_ms,sum_list_sizes,nodes,pieces"
    assert [r.n for r in rows] == [64, 128, 256]
    assert all(v > 0 for v in normalized_list_sizes(rows))
    assert loglog_slope([1, 2, 4], [3, 6, 12]) == pytest.approx(1.0)
    code, out, err = call(RunConfig("bench", seed=0, sizes=(32, 64, 128), reps=1, csv=str(tmp_path / "b.csv")))
    assert code == 0 and "log-log slope" in err
    assert (tmp_path / "b.csv").read_text() == out
