"""Schema checks for the JSON reports printed by the CLI.
Each subcommand has one definition in ``schemas/report.schema.json``.
"""
import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import jsonschema

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schemas" / "report.schema.json"


@lru_cache(maxsize=None)
def load_schema():
    with open(SCHEMA_PATH, "r", encoding="utf-8") as handle:
        return json.load(handle)


def validate_report(report: Any, command: str) -> Dict[str, Any]:
    """Validate ``report`` against the definition for ``command``. Returns a
    dict with `valid` bool and `errors` list.
    """
    schema = load_schema()
    if command not in schema["$defs"]:
        return {"valid": False, "errors": [f"Unknown report kind: {command}"]}

    wrapper = {
        "$schema": schema["$schema"],
        "$defs": schema["$defs"],
        "$ref": f"#/$defs/{command}",
    }
    validator = jsonschema.Draft202012Validator(wrapper)
    found = sorted(validator.iter_errors(report), key=lambda e: [str(p) for p in e.absolute_path])
    errors = [
        f"{'/'.join(str(p) for p in error.absolute_path) or '<root>'}: {error.message}"
        for error in found
    ]
    return {"valid": len(errors) == 0, "errors": errors}
