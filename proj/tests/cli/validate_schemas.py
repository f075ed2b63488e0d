"""Validates scenarios and emitted reports/certificates against schemas/.

usage: validate_schemas.py SCHEMA_DIR SCENARIO_DIR OUTPUT_DIR
"""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def main(schema_dir, scenario_dir, output_dir):
    schemas = {p.name: json.loads(p.read_text()) for p in pathlib.Path(schema_dir).glob("*.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )

    def validator(name):
        return jsonschema.Draft202012Validator(schemas[name], registry=registry)

    scenario, report, cert = (validator(n) for n in ("scenario.v1.json", "report.v1.json", "certificate.v1.json"))
    checked, bad = 0, 0

    def run(v, path):
        nonlocal checked, bad
        checked += 1
        errors = list(v.iter_errors(json.loads(path.read_text())))
        for e in errors[:3]:
            print(f"{path}: {e.message}")
        bad += bool(errors)

    for p in sorted(pathlib.Path(scenario_dir).glob("*.json")):
        run(scenario, p)
    for p in sorted(pathlib.Path(output_dir).rglob("*.json")):
        run(cert if p.name.endswith(".certificate.json") else report, p)
    print(f"{checked} documents, {bad} invalid")
    return 1 if bad or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:4]))
