"""Structural validation of emitted JSON against the shipped schema file.

Covers the subset of JSON-schema keywords the shipped schemas use: type,
required, properties, items, enum, minimum, prefix (per-position types) and
$ref into the same schema set.  Raises SchemaError with a path on the first
violation.
"""

import json
import os

_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "integer": int,
    "number": (int, float),
    "boolean": bool,
}


class SchemaError(ValueError):
    pass


def _schemas():
    path = os.path.join(os.path.dirname(__file__), "data", "schemas.json")
    with open(path) as fh:
        return json.load(fh)


def validate(instance, schema_name):
    schemas = _schemas()
    if schema_name not in schemas:
        raise SchemaError(f"no schema named {schema_name!r}")
    _check(instance, schemas[schema_name], schemas, schema_name)
    return True


def _check(value, schema, schemas, path):
    if "$ref" in schema:
        _check(value, schemas[schema["$ref"]], schemas, path)
        return
    t = schema.get("type")
    if t is not None:
        pytype = _TYPES[t]
        if not isinstance(value, pytype) or (t != "boolean" and isinstance(value, bool)):
            raise SchemaError(f"{path}: expected {t}, got {type(value).__name__}")
    if "enum" in schema and value not in schema["enum"]:
        raise SchemaError(f"{path}: {value!r} not one of {schema['enum']}")
    if "minimum" in schema and value < schema["minimum"]:
        raise SchemaError(f"{path}: {value} below minimum {schema['minimum']}")
    if t == "object":
        for key in schema.get("required", ()):
            if key not in value:
                raise SchemaError(f"{path}: missing required key {key!r}")
        for key, sub in schema.get("properties", {}).items():
            if key in value:
                _check(value[key], sub, schemas, f"{path}.{key}")
    if t == "array":
        item_schema = schema.get("items")
        if item_schema is not None:
            prefix = item_schema.get("prefix")
            for idx, item in enumerate(value):
                if prefix is not None:
                    if len(item) != len(prefix):
                        raise SchemaError(f"{path}[{idx}]: expected {len(prefix)} fields")
                    for j, tname in enumerate(prefix):
                        _check(item[j], {"type": tname}, schemas, f"{path}[{idx}][{j}]")
                else:
                    _check(item, item_schema, schemas, f"{path}[{idx}]")
