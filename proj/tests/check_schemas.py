"""Run the CLI on every fixture and a few failure cases; validate all output against schemas/v1."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

cli = sys.argv[1]
schema_dir = pathlib.Path(sys.argv[2])

schemas = {}
registry = Registry()
for path in sorted(schema_dir.glob("*.schema.json")):
    doc = json.loads(path.read_text())
    schemas[path.name] = doc
    registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
    registry = registry.with_resource(path.name, Resource.from_contents(doc))


def validate(instance, name):
    schema = schemas[name]
    jsonschema.Draft202012Validator(schema, registry=registry).validate(instance)


def run(args, expect_code):
    proc = subprocess.run([cli, *args], capture_output=True, text=True, timeout=300)
    if proc.returncode != expect_code:
        raise SystemExit(f"{args}: exit {proc.returncode}, expected {expect_code}\n{proc.stdout}{proc.stderr}")
    return json.loads(proc.stdout if expect_code == 0 else proc.stderr)


failures = 0
listing = run(["fixtures"], 0)
validate(listing, "report.schema.json")
validate(listing["result"], "result.fixtures.schema.json")
subcommands_seen = {"fixtures"}
for fx in listing["result"]["fixtures"]:
    report = run([fx["subcommand"], "--fixture", fx["name"]], 0)
    try:
        validate(report, "report.schema.json")
        validate(report["result"], f"result.{fx['subcommand']}.schema.json")
    except jsonschema.ValidationError as e:
        failures += 1
        print(f"FAIL {fx['name']}: {e.message}")
        continue
    subcommands_seen.add(fx["subcommand"])
    print(f"ok   {fx['name']} ({fx['subcommand']})")

missing = {p.name[len("result."):-len(".schema.json")] for p in schema_dir.glob("result.*.schema.json")} - subcommands_seen
if missing:
    failures += 1
    print(f"FAIL no fixture exercises: {sorted(missing)}")

error_cases = [
    (["delaunay", "--json", "{not json"], 1, "invalid_json"),
    (["no-such-command", "--json", "{}"], 1, "unknown_subcommand"),
    (["delaunay", "--json", '{"g":2,"matrix":[["1","0"],["0","0"]]}'], 1, "input_error"),
    (["triangulations", "--fixture", "unit-square", "--max-points", "3"], 2, "refused"),
    (["hull", "--fixture", "a2-form"], 1, "usage"),
]
for args, code, kind in error_cases:
    err = run(args, code)
    validate(err, "error.schema.json")
    if err["error"]["code"] != kind:
        failures += 1
        print(f"FAIL {args}: code {err['error']['code']}, expected {kind}")
    else:
        print(f"ok   error case {kind}")

sys.exit(1 if failures else 0)
