"""Validates every --format json output of the CLI against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

D = "seq[prod(C(2,i) for i in N), C(2,2)]"
W = "seq[repeat(prod(C(2,i) for i in N)), L(2,[1],[0,1]), C(2,3)^2] * Zp(2)^2"
cases = [
    ["normalize", W],
    ["validate", D],
    ["validate", "seq[C(2,1), C(2,2)]"],
    ["dual", W],
    ["series", W, "--at", "w+1"],
    ["type", W],
    ["iso", "--topological", D, D],
    ["iso", "--abstract", D, "seq[prod(C(2,i) for i in N)] * Zp(2)^1"],
    ["iso", "--abstract", "C(2,1)^aleph0", "seq[prod(C(2,i) for i in N)]"],
    ["embed", W, D],
    ["embed", D, "C(2,1)^aleph0"],
    ["construct", D],
    ["construct", W, "--emit-tree"],
    ["construct", "seq[repeat(prod(C(2,i) for i in N))]"],
    ["materialize", D, "--level", "3", "--cap", "2"],
    ["decompose", W, "--take", "3"],
    ["decompose", W, "--take", "2", "--cyclic-tops"],
    ["verify", "--suite", "theta"],
]

failures = 0
outputs = {}
for args in cases:
    proc = subprocess.run([cli, "--format", "json", *args], capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        print(f"FAIL exit {proc.returncode}: {args}: {proc.stderr.strip()}")
        failures += 1
        continue
    doc = json.loads(proc.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    if errors:
        failures += 1
        print(f"FAIL {args}: {errors[0].message}")
    else:
        print(f"ok   {args[0]} ({len(proc.stdout)} bytes)")
    outputs[tuple(args)] = proc.stdout

# The tree emitted by construct feeds materialize.
tree = subprocess.run([cli, "construct", D, "--emit-tree"], capture_output=True, text=True, check=True).stdout
mat = subprocess.run([cli, "--format", "json", "materialize", tree, "--level", "2"], capture_output=True, text=True)
# C_2 + C_4 extended by a cyclic top of order 4.
if mat.returncode != 0 or json.loads(mat.stdout)["group"]["log_order"] != 5:
    failures += 1
    print("FAIL construct | materialize pipeline")

# Determinism: identical inputs, identical bytes.
for args in cases[:-1]:
    again = subprocess.run([cli, "--format", "json", *args], capture_output=True, text=True).stdout
    if again != outputs.get(tuple(args), again):
        failures += 1
        print(f"FAIL nondeterministic output for {args}")

sys.exit(1 if failures else 0)
