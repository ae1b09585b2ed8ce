#!/usr/bin/env python3
"""End-to-end checks of the qups command line tool (binary path in argv[1])."""

import json
import os
import subprocess
import sys
import tempfile

BIN = os.path.abspath(sys.argv[1])
FAILURES = []


def run(args, expect=0, threads=None):
    env = os.environ.copy()
    if threads is not None:
        env["QUPS_THREADS"] = str(threads)
    p = subprocess.run([BIN] + args, capture_output=True, text=True, env=env)
    if p.returncode != expect:
        raise AssertionError(
            f"{args}: rc={p.returncode} (want {expect})\nstdout: {p.stdout[:2000]}\n"
            f"stderr: {p.stderr[:2000]}"
        )
    return p.stdout


def check(name, fn):
    try:
        fn()
        print(f"ok {name}")
    except Exception as exc:  # noqa: BLE001
        FAILURES.append(name)
        print(f"FAIL {name}: {exc}")


def t_gen_stdout():
    out = run(["gen", "--kind", "fibonacci", "--m", "6"])
    lines = out.strip().splitlines()
    assert lines[0] == "qups 1 2 8 rat", lines[0]
    assert lines[1].startswith("# family=fibonacci"), lines[1]
    assert len(lines) == 10, len(lines)
    assert lines[2] == "0/1 0/1", lines[2]


def t_gen_analyze_roundtrip():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "fib6.txt")
        run(["gen", "--kind", "fibonacci", "--m", "6", "--out", path])
        out = run(["analyze", path, "--metrics", "sep,mesh", "--grid", "512"])
        r = json.loads(out)
        assert r["q"] == 0.125, r
        assert r["q_exact"] is True
        assert 1.0 <= r["rho_lo"] <= r["rho_hi"] <= 12.0, r
        assert "kappa" not in r
        assert "version" in r and "args" in r

        out2 = run(["analyze", path, "--metrics", "all", "--grid", "512"])
        r2 = json.loads(out2)
        assert r2["kappa"] == 4, r2
        assert abs(r2["sigma"] - 0.35355339059327373) < 1e-15, r2
        assert r2["dstar_is_lb"] is False


def t_determinism():
    a = run(["gen", "--kind", "kronecker", "--alpha", "pow2", "--dim", "2",
             "--count", "128"])
    b = run(["gen", "--kind", "kronecker", "--alpha", "pow2", "--dim", "2",
             "--count", "128"])
    assert a == b
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "k.txt")
        run(["gen", "--kind", "kronecker", "--alpha", "pow2", "--dim", "2",
             "--count", "500", "--out", path])
        r1 = run(["analyze", path, "--metrics", "all", "--grid", "128"], threads=1)
        r3 = run(["analyze", path, "--metrics", "all", "--grid", "128"], threads=3)
        assert r1 == r3, "thread-count dependent analyze output"


def t_exit_codes():
    run(["analyze", "/nonexistent/file.txt", "--metrics", "sep"], expect=2)
    run(["gen", "--kind", "nope", "--m", "3"], expect=2)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "p.txt")
        run(["gen", "--kind", "grid", "--m", "2", "--dim", "2", "--out", path])
        run(["analyze", path], expect=2)                      # --metrics required
        run(["analyze", path, "--metrics", ""], expect=2)     # empty metric name
    run(["search", "--N", "30"], expect=2)
    run(["gen", "--kind", "rank1", "--g", "2,3", "--N", "8"], expect=2)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "g.txt")
        run(["gen", "--kind", "grid", "--m", "4", "--dim", "3", "--out", path])
        run(["analyze", path, "--metrics", "cover", "--grid", "10000"], expect=3)
    bad = os.path.join(tempfile.gettempdir(), "qups_bad_header.txt")
    with open(bad, "w") as f:
        f.write("qups 9 2 1 rat\n0/1 0/1\n")
    try:
        run(["analyze", bad, "--metrics", "sep"], expect=2)
    finally:
        os.remove(bad)


def t_search():
    with tempfile.TemporaryDirectory() as tmp:
        prefix = os.path.join(tmp, "scan")
        run(["search", "--N", "5", "--kappa-dual-min", "2", "--out", prefix])
        with open(prefix + ".json") as f:
            summary = json.load(f)
        assert summary["scanned"] == 25 and summary["passed"] == 16, summary
        assert summary["mode"] == "exhaustive"
        with open(prefix + ".csv") as f:
            rows = [ln for ln in f.read().strip().splitlines() if ln]
        assert rows[0] == "g1,g2,kappa_primal,kappa_dual,dstar,rho_hi"
        assert len(rows) == 17, len(rows)
    out = run(["search", "--N", "7", "--mode", "random", "--samples", "10",
               "--seed", "3"])
    summary = json.loads(out[out.index("\n{") + 1:])  # csv block, then json
    assert summary["scanned"] == 10 and summary["mode"] == "random", summary


def t_search_deterministic_threads():
    a = run(["search", "--N", "11", "--with-rho"], threads=1)
    b = run(["search", "--N", "11", "--with-rho"], threads=4)
    assert a == b, "thread-count dependent search output"


def t_profile():
    out = run(["profile", "--kind", "fibonacci", "--index", "list:5,6,7",
               "--metrics", "sep,mesh", "--grid", "256"])
    rows = out.strip().splitlines()
    assert rows[0].startswith("index,n,d,p,q,"), rows[0]
    assert len(rows) == 4, rows
    for ln in rows[1:]:
        rho_hi = float(ln.split(",")[8])
        assert rho_hi <= 12.0, ln


def t_verify_bounds():
    out = run(["verify-bounds", "--suite", "cf"])
    assert "all checks passed" in out, out
    run(["verify-bounds", "--suite", "bogus"], expect=2)


def t_float_roundtrip():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "k.txt")
        run(["gen", "--kind", "kronecker", "--alpha", "golden", "--dim", "1",
             "--count", "100", "--out", path])
        r = json.loads(run(["analyze", path, "--metrics", "sep,cover", "--grid", "512"]))
        assert r["q"] > 0 and r["h_hi"] >= r["h_lo"] > 0, r


def main():
    check("gen_stdout", t_gen_stdout)
    check("gen_analyze_roundtrip", t_gen_analyze_roundtrip)
    check("determinism", t_determinism)
    check("exit_codes", t_exit_codes)
    check("search", t_search)
    check("search_deterministic_threads", t_search_deterministic_threads)
    check("profile", t_profile)
    check("verify_bounds", t_verify_bounds)
    check("float_roundtrip", t_float_roundtrip)
    if FAILURES:
        print(f"{len(FAILURES)} cli checks failed: {FAILURES}")
        return 1
    print("all cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
