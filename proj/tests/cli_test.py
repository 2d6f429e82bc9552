"""Runs the univ tool on generated fixtures: exit codes, --json schemas, determinism."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

TOOL, SCHEMA = sys.argv[1], Path(sys.argv[2])
bundle = json.loads(SCHEMA.read_text())
jsonschema.Draft202012Validator.check_schema(bundle)

failures = []


def validator(kind):
    return jsonschema.Draft202012Validator({"$defs": bundle["$defs"], "$ref": f"#/$defs/{kind}"})


def run(args, code, kind=None, check=None):
    r = subprocess.run([TOOL, "--json", *args], capture_output=True, text=True)
    label = " ".join(args)
    if r.returncode != code:
        failures.append(f"{label}: exit {r.returncode}, expected {code}\n{r.stderr}")
        return None
    doc = json.loads(r.stdout)
    errors = sorted(validator(kind).iter_errors(doc), key=str) if kind else []
    for e in errors[:3]:
        failures.append(f"{label}: {kind} schema: {e.message} at {list(e.absolute_path)}")
    if not jsonschema.Draft202012Validator(bundle).is_valid(doc):
        failures.append(f"{label}: not a document of the bundle")
    if check and not check(doc):
        failures.append(f"{label}: unexpected content")
    print(f"ok {label}" if not errors else f"FAIL {label}")
    return doc


with tempfile.TemporaryDirectory() as tmp:
    fx = Path(tmp) / "fx"
    run(["fixtures", "--out", str(fx)], 0, "fixtures")
    f = lambda name: str(fx / name)

    for name in ["poset.fincat", "bz2.fincat", "s3.grp", "z2_to_1.grphom", "regular_z2.psh", "true.pshmap",
                 "nerve_poset.json", "nerve_bz2.json"]:
        run(["validate", f(name)], 0, "validation")
        kind = json.loads((fx / name).read_text())["schema"].split("/")[0]
        run(["show", f(name)], 0, kind)

    run(["univalence", "check", "--morphism", f("true.pshmap")], 0, "uverdict", lambda d: d["univalent"] is True)
    run(["univalence", "check", "--morphism", f("fold.pshmap")], 1, "uverdict",
        lambda d: d["univalent"] is False and "witness" in d["bruteforce"])
    run(["univalence", "check", "--morphism", f("point.pshmap"), "--method", "omega"], 0, "uverdict")
    run(["univalence", "check", "--morphism", f("fold.pshmap"), "--method", "omega"], 2, "uverdict")
    run(["univalence", "check", "--morphism", f("s3_point.pshmap")], 1, "uverdict")
    run(["univalence", "enumerate", "--ambient", "finset", "--bound", "3"], 0, "univposet",
        lambda d: sorted(e["name"] for e in d["elements"]) == ["0->0", "0->1", "1->1:{0}", "1->2:{0}"])
    run(["univalence", "enumerate", "--ambient", "gset:" + f("z2.grp"), "--bound", "2"], 0, "univposet")
    run(["univalence", "enumerate", "--ambient", "presheaf:" + f("poset.fincat"), "--bound", "2"], 0, "univposet")

    run(["segal", "check", "--in", f("nerve_bz2.json")], 0, "verdict")
    run(["segal", "complete", "--in", f("nerve_poset.json")], 0, "verdict", lambda d: d["pass"])
    run(["segal", "complete", "--in", f("nerve_bz2.json")], 1, "verdict", lambda d: not d["pass"])
    run(["segal", "h-quotient", "--in", f("nerve_bz2.json")], 0, "verdict")

    ic = run(["internal", "build", "--morphism", f("fold.pshmap"), "--out", str(Path(tmp) / "ic.json")], 0, "ic")
    if ic is not None and json.loads((Path(tmp) / "ic.json").read_text()) != ic:
        failures.append("internal build: --out file differs from stdout")

    run(["group", "analyze", f("s3.grp")], 0, "grpreport", lambda d: d["complete"])
    run(["group", "analyze", f("q8.grp")], 0, "grpreport", lambda d: not d["complete"])
    run(["group", "tower", f("d4.grp"), "--max-steps", "2"], 0, "tower")
    run(["group", "refute", f("z2_to_1.grphom"), "--catalog-order", "4"], 1, "grprefute", lambda d: d["refuted"])
    run(["group", "refute", f("1_to_z2.grphom"), "--catalog-order", "4"], 0, "grprefute", lambda d: not d["refuted"])

    for target in ["set-table", "s3", "hackney", "complete-groups"]:
        run(["reproduce", target], 0, "repro", lambda d: d["match"])
    # the Z/2 lemma maps are refuted in the catalog, so this target reports a mismatch
    run(["reproduce", "grp-table"], 1, "repro", lambda d: not d["match"] and len(d["detail"]["missing"]) == 2)
    a = subprocess.run([TOOL, "--json", "reproduce", "hackney"], capture_output=True).stdout
    b = subprocess.run([TOOL, "--json", "reproduce", "hackney"], capture_output=True).stdout
    if a != b:
        failures.append("reproduce hackney: output differs between runs")

    bad = json.loads((fx / "poset.fincat").read_text())
    bad["morphisms"].append(bad["morphisms"][1])
    (fx / "dup.fincat").write_text(json.dumps(bad))
    run(["validate", f("dup.fincat")], 2, "error", lambda d: d["law"] == "duplicate morphism id")
    (fx / "broken.json").write_text('{"schema": "psh/v1", ')
    run(["validate", f("broken.json")], 2, "error")
    run(["validate", f("absent.json")], 2, "error")
    run(["reproduce", "nope"], 2, "error")

for line in failures:
    print("FAIL", line)
sys.exit(1 if failures else 0)
