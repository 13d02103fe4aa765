"""Validates every problem file under the data directory against the schema."""
import glob
import json
import sys

import jsonschema


def main(schema_path, data_dir):
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    files = sorted(glob.glob(f"{data_dir}/*.json"))
    for path in files:
        with open(path) as f:
            doc = json.load(f)
        errors = list(validator.iter_errors(doc))
        for e in errors:
            print(f"{path}: {e.json_path}: {e.message}")
        failures += bool(errors)
    print(f"{len(files) - failures}/{len(files)} files valid")
    return 1 if failures or not files else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
