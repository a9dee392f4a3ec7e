"""Runs the CLI on the fixtures and validates every JSON report against the schema."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, fixtures = sys.argv[1:4]
schema = json.load(open(schema_path))
runs = [
    ["rank", "whitney.map", "--samples", "3"],
    ["rank", "linear3.map", "--samples", "2", "--mode", "float"],
    ["normalize", "whitney.map"],
    ["sff", "whitney3.map", "--samples", "2"],
    ["flat", "linear.map", "--samples", "2"],
    ["frame", "whitney.map", "--timing"],
    ["check-aut", "sigma0_sample.aut"],
]
failed = 0
for args in runs:
    cmd = [cli, args[0], f"{fixtures}/{args[1]}", *args[2:], "--format", "json"]
    out = subprocess.run(cmd, capture_output=True, text=True)
    try:
        jsonschema.validate(json.loads(out.stdout), schema)
        print("ok  ", " ".join(args))
    except Exception as e:  # noqa: BLE001
        failed += 1
        print("FAIL", " ".join(args), e)
sys.exit(1 if failed else 0)
