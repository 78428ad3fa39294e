"""Validate gue_lab summary files against the published schema."""
import json
import sys

import jsonschema


def main() -> int:
    if len(sys.argv) < 3:
        print("usage: validate_summary.py SCHEMA SUMMARY...", file=sys.stderr)
        return 2
    with open(sys.argv[1]) as fh:
        schema = json.load(fh)
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    failed = False
    for path in sys.argv[2:]:
        with open(path) as fh:
            doc = json.load(fh)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for err in errors:
            print(f"{path}: {'/'.join(map(str, err.path))}: {err.message}")
        failed = failed or bool(errors)
        # Every check must agree with the criterion verdict.
        for crit in doc.get("criteria", []):
            if crit["pass"] != all(c["pass"] for c in crit["checks"]):
                print(f"{path}: criterion {crit['id']} verdict disagrees with its checks")
                failed = True
        if doc.get("pass") != all(c["pass"] for c in doc.get("criteria", [])):
            print(f"{path}: top-level pass disagrees with criteria")
            failed = True
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
