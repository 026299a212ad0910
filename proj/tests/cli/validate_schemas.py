#!/usr/bin/env python3
# Copyright 2026 The Faultline Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs every faultline subcommand and validates its JSON against docs/schemas.

usage: validate_schemas.py FAULTLINE_BINARY SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CSV_HEADERS = {
    "sweep": "L,N,p,trials,failures,estimate,lo,hi,seed",
    "cost-benefit": "L,N,A,alpha,eta,log10_C,log10_B,log10_value,C,B,value,convergence_ok",
    "enumerate": "r,walks_free,walks_exclude_face,walks_both_lattices,overcount_2nl,overcount_4nl,"
    "reaching_opposite,spanning_saw,overcount_ratio",
}


def run(binary, args, expect=0):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
    if proc.returncode != expect:
        raise AssertionError(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return proc


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name[: -len(".schema.json")]: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    for schema in schemas.values():
        jsonschema.Draft202012Validator.check_schema(schema)

    tmp = pathlib.Path(tempfile.mkdtemp())
    witness = tmp / "witness.json"
    problem = tmp / "problem.json"
    faults = tmp / "faults.json"
    problem.write_text(json.dumps({"pair_weights": [[0, 3, 5], [3, 0, 2], [5, 2, 0]], "boundary_weights": [1, 4, 1]}))
    faults.write_text("[0, 5, 17]")
    run(binary, ["witness", "--L", "7", "--N", "1", "--template", "phenomenological6", "--seed", "7", "--out", str(witness)])

    cases = [
        ["lattice-info", "--L", "5"],
        ["graph-info", "--L", "3", "--N", "2", "--list-edges"],
        ["graph-info", "--L", "5", "--template", "phenomenological6"],
        ["adjudicate", "--L", "3", "--N", "2", "--faults", str(faults)],
        ["simulate", "--L", "3", "--p", "0.01", "--trials", "1000", "--seed", "1"],
        ["sweep", "--L", "3,5", "--p", "0.01", "--trials", "200", "--format", "json"],
        ["bounds", "--kind", "p_ub", "--L", "7", "--N", "7", "--p", "0"],
        ["bounds", "--kind", "w_ub", "--L", "5", "--eta", "1e-2"],
        ["bounds", "--kind", "generic", "--L", "9", "--eta", "1e-4", "--alpha", "0.25"],
        ["bounds", "--kind", "p_path", "--r", "4", "--p", "0.1"],
        ["bounds", "--kind", "disconnected", "--A", "50", "--r", "3", "--p", "0.2"],
        ["threshold", "--kind", "pub"],
        ["threshold", "--kind", "wub", "--grid", "1e-8:1e-2"],
        ["cost-benefit", "--alpha", "0.1", "--eta", "1e-4", "--L-range", "3:11", "--format", "json"],
        ["methods-check", "--L", "5", "--p", "1e-3", "--r-max", "60"],
        ["enumerate", "--L", "3", "--N", "2", "--r-max", "6", "--format", "json"],
        ["witness", "--L", "5", "--N", "1", "--template", "phenomenological6", "--budget", "3", "--seed", "1"],
        ["exclusion", "--witness", str(witness), "--radii", "0,2,12", "--samples", "300"],
        ["match", "--problem", str(problem), "--oracle"],
    ]
    failures = 0
    for args in cases:
        doc = json.loads(run(binary, args).stdout)
        try:
            jsonschema.validate(doc, schemas[args[0]], cls=jsonschema.Draft202012Validator)
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL {' '.join(args)}: {e.message}")
        else:
            print(f"ok   {' '.join(args)}")

    csv_cases = {
        "sweep": ["sweep", "--L", "3", "--p", "0.01", "--trials", "100"],
        "cost-benefit": ["cost-benefit", "--alpha", "0", "--eta", "1e-4", "--L-range", "3:7"],
        "enumerate": ["enumerate", "--L", "3", "--N", "2", "--r-max", "4"],
    }
    for name, args in csv_cases.items():
        header = run(binary, args).stdout.splitlines()[0]
        if header != CSV_HEADERS[name]:
            failures += 1
            print(f"FAIL {name} csv header: {header}")
        else:
            print(f"ok   {name} csv header")

    for args, code in [(["simulate", "--p", "1.5"], 1), (["simulate", "--bogus"], 2), (["graph-info", "--L", "4"], 1)]:
        line = run(binary, args, expect=code).stderr
        try:
            assert line.count("\n") == 1
            jsonschema.validate(json.loads(line), schemas["error"])
        except (AssertionError, jsonschema.ValidationError) as e:
            failures += 1
            print(f"FAIL error line {args}: {e}")
        else:
            print(f"ok   error line {' '.join(args)}")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
