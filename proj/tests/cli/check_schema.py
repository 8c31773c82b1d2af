"""Validate every subcommand's JSON report against the schema."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

strata, schema_path = sys.argv[1], sys.argv[2]
schema = json.load(open(schema_path))

runs = [
    ["chains", "-r", "2", "--max-depth", "2"],
    ["census", "-r", "2", "--max-depth", "2", "--mu"],
    ["census", "-r", "2", "--max-depth", "2", "--flavor", "relative"],
    ["stability", "-d", "7", "-n", "2,2,2", "--certify", "--max-points", "2", "--max-depth", "3"],
    ["stability", "-d", "5", "-n", "2,2,2", "--general-position"],
    ["delpezzo", "ample", "--alpha", "3,1,1,1,1"],
    ["delpezzo", "normalize", "--alpha", "8,4,3,2,1"],
    ["delpezzo", "nalpha", "--alpha", "8,4,3,2,1"],
    ["verify", "--suite", "stability", "--suite", "delpezzo"],
]

failures = 0
for args in runs:
    out = subprocess.run([strata, *args], capture_output=True, text=True)
    if out.returncode != 0:
        print("FAIL exit", out.returncode, args, out.stderr)
        failures += 1
        continue
    try:
        doc = json.loads(out.stdout)
        jsonschema.validate(doc, schema)
        assert doc["command"]["name"] == args[0]
    except Exception as e:  # noqa: BLE001
        print("FAIL schema", args, e)
        failures += 1
        continue
    csv = subprocess.run([strata, "--format", "csv", *args], capture_output=True, text=True)
    if csv.returncode != 0 or not csv.stdout.strip():
        print("FAIL csv", args)
        failures += 1

with tempfile.TemporaryDirectory() as d:
    env = dict(os.environ, STRATA_OUTPUT_DIR=d)
    subprocess.run([strata, "chains", "-r", "1"], env=env, check=True, capture_output=True)
    path = os.path.join(d, "chains.json")
    if not os.path.exists(path):
        print("FAIL output dir")
        failures += 1
    else:
        jsonschema.validate(json.load(open(path)), schema)

print("schema checks:", "FAIL" if failures else "PASS")
sys.exit(1 if failures else 0)
