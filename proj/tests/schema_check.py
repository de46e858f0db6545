"""Validate CLI JSON output against the schemas in docs/schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

cli, schema_dir, golden = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

CASES = [
    ("weight_system.schema.json", ["weights", "icartier", "--N", "12", "--p", "5", "--weights", "A:1/12x2,0x1;B:5/12", "--format", "json"]),
    ("character_system.schema.json", ["bis", "pull", "--N", "5", "--weights", "P:1/5x2,0", "--format", "json"]),
    ("parabolic_shape.schema.json", ["linebundle", "--degree", "2", "--twists", "D1:-1/4;D2:3/2", "--format", "json"]),
    ("flow_trajectory.schema.json", ["flow", "weights", "--N", "9", "--p", "7", "--weights", "D:1/9,4/9"]),
    ("flow_trajectory.schema.json", ["flow", "shape", "--rank", "1", "--deg0", "-1", "--N", "5", "--weights", "D1:1/5;D2:4/5", "--p", "2"]),
    ("flow_trajectory.schema.json", ["flow", "shape", "--rank", "2", "--deg0", "3", "--N", "1", "--p", "3"]),
    ("scan_result.schema.json", ["scan", "--N", "30", "--weights", "D:7/30", "--pmax", "100", "--format", "json"]),
    ("error.schema.json", ["weights", "cartier", "--N", "10", "--p", "4", "--weights", "D:1/10"]),
]

failures = 0
for schema_name, args in CASES:
    out = subprocess.run([cli, *args], capture_output=True, text=True).stdout
    try:
        doc = json.loads(out)
        jsonschema.Draft202012Validator(schemas[schema_name], registry=registry).validate(doc)
        print(f"ok   {schema_name:34} {' '.join(args[:2])}")
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failures += 1
        print(f"FAIL {schema_name:34} {' '.join(args)}: {e}")

# The golden assembly file is an input document.
assembly = json.loads(pathlib.Path(golden, "assembly.json").read_text())
try:
    jsonschema.Draft202012Validator(schemas["residue_block_assembly.schema.json"], registry=registry).validate(assembly)
    print("ok   residue_block_assembly.schema.json  golden/assembly.json")
except jsonschema.ValidationError as e:
    failures += 1
    print(f"FAIL residue_block_assembly.schema.json: {e}")

sys.exit(1 if failures else 0)
