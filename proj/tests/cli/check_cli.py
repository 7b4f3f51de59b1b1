"""Command-line behaviour: exit codes, determinism and diagnostics."""
import json
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile
import time

import yaml

ROOT = pathlib.Path(sys.argv[1])
CLI = sys.argv[2]
SAMPLE = ROOT / "content" / "sample"
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=e)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)

    r = run("validate", SAMPLE)
    expect(r.returncode == 0, "validate sample exits 0")

    dangling = tmp / "dangling"
    shutil.copytree(SAMPLE, dangling)
    story = dangling / "stories" / "first-day.yaml"
    story.write_text(story.read_text().replace("exercise: fd-run-bus", "exercise: fd-run-tram"))
    r = run("validate", dangling)
    expect(r.returncode == 1, "dangling exercise reference exits 1")
    expect(any(l.startswith("stories/first-day.yaml:") and "fd-run-tram" in l for l in r.stderr.splitlines()),
           "dangling reference diagnostic is located in the story file")

    cyclic = tmp / "cyclic"
    shutil.copytree(SAMPLE, cyclic)
    with open(cyclic / "graph.yaml", "a") as f:
        f.write("  - {from: loops, to: variables}\n")
    r = run("validate", cyclic)
    expect(r.returncode == 1, "cyclic graph exits 1")
    expect("cycle" in r.stderr, "cyclic graph reports a cycle")

    empty = tmp / "empty.js"
    empty.write_text("")
    r = run("trace", empty, "--json")
    doc = json.loads(r.stdout)
    expect(r.returncode == 0 and doc["events"] == [] and doc["grid"]["rows"] == [], "empty file gives an empty table")

    capital = tmp / "capital.js"
    capital.write_text('let capital = "Brussels";\n')
    doc = json.loads(run("trace", capital, "--json").stdout)
    expect([(e["step"], e["line"], e["kind"], e["name"], e["value"]) for e in doc["events"]] ==
           [(1, 1, "declare", "capital", '"Brussels"')], "capital example has one declare row")
    expect(doc["final_bindings"] == {"capital": '"Brussels"'}, "capital final bindings")

    loop = tmp / "loop.js"
    loop.write_text("while (true) {\n}\n")
    t0 = time.monotonic()
    r = run("trace", loop, "--json")
    elapsed = time.monotonic() - t0
    expect(r.returncode == 2 and json.loads(r.stdout)["status"] == "budget-exceeded",
           "infinite loop exits 2 with budget-exceeded")
    expect(elapsed < 1.0, f"infinite loop stops in {elapsed:.3f}s")
    r = run("trace", loop, "--json", env={"CODETALES_BUDGET": "50"})
    expect(json.loads(r.stdout)["steps"] <= 51, "CODETALES_BUDGET lowers the step budget")

    bad = tmp / "bad.js"
    bad.write_text("let = 1;\n")
    r = run("trace", bad)
    expect(r.returncode == 1 and "1:" in r.stderr, "syntax error exits 1 with a location")

    prog = ROOT / "tests" / "corpus" / "programs" / "10_fizzbuzz.js"
    for kind, extra in [("blanks", ["--difficulty", "3"]), ("parsons", []), ("qlc", ["--count", "3"]),
                        ("tracefill", ["--mask", "0.4"])]:
        a = run("gen", kind, prog, "--seed", "42", *extra)
        b = run("gen", kind, prog, "--seed", "42", *extra)
        expect(a.returncode == 0 and a.stdout == b.stdout, f"gen {kind} is byte-identical for equal flags")
    for count in (1, 2, 3):
        doc = json.loads(run("gen", "qlc", prog, "--seed", "5", "--count", count).stdout)
        expect(1 <= len(doc["questions"]) <= count, f"qlc --count {count} gives at most {count} questions")
    r = run("gen", "qlc", prog, "--count", "4")
    expect(r.returncode == 1, "qlc --count 4 is rejected")
    d5 = json.loads(run("gen", "blanks", prog, "--seed", "1", "--difficulty", "5").stdout)
    d5b = json.loads(run("gen", "blanks", prog, "--seed", "2", "--difficulty", "5").stdout)
    expect([b["source_span"] for b in d5["blanks"]] == [b["source_span"] for b in d5b["blanks"]],
           "blanks --difficulty 5 blanks every candidate regardless of seed")

    make = SAMPLE / "exercises" / "mk-make-order.yaml"
    spec = yaml.safe_load(make.read_text())
    ref = tmp / "ref.js"
    ref.write_text(spec["reference"])
    expect(run("grade", "make", "--exercise", make, "--solution", ref).returncode == 0, "reference solution exits 0")
    mutant = tmp / "mutant.js"
    mutant.write_text(spec["mutants"][0]["source"])
    r = run("grade", "make", "--exercise", make, "--solution", mutant)
    expect(r.returncode == 1 and spec["mutants"][0]["feedback"] in r.stdout, "broken solution prints its feedback")
    r = run("grade", "make", "--exercise", make, "--solution", bad)
    expect(r.returncode == 1 and "compile-error" in r.stdout, "unparsable solution is a compile error, exit 1")
    r = run("grade", "make", "--exercise", SAMPLE / "exercises" / "fd-run-bus.yaml", "--solution", ref)
    expect(r.returncode == 1, "grade make rejects a non-make exercise")
    r = run("grade", "make", "--exercise", tmp / "missing.yaml", "--solution", ref)
    expect(r.returncode == 2, "missing file exits 2")

    r = run("serve", "--content", cyclic, "--data", tmp / "data", "--port", "0")
    expect(r.returncode == 1, "serve refuses invalid content")

if failures:
    sys.exit(1)
