"""The :mod:`~feeder_scheduler.core.schema` module handles the JSON schemas used to
validate scheduler configuration documents.

Every configurable module ships a ``module_schema.json`` file next to its code. That
schema declares the keys the module accepts under its top-level config section, their
types and ranges and, where a sensible value exists (one hour states, ten members in
the herd), a default. Schemas are loaded with
:func:`~feeder_scheduler.core.schema.load_schema` when a module is registered (see
:mod:`~feeder_scheduler.core.registry`) and then combined for a run with
:func:`~feeder_scheduler.core.schema.merge_schemas`.

Validation uses :data:`~feeder_scheduler.core.schema.ValidatorWithDefaults`, a
Draft 2020-12 validator extended so that missing entries are filled from the schema
defaults while the configuration is checked.
"""  # noqa: D205, D415

import json
from copy import deepcopy
from collections.abc import Iterator
from pathlib import Path
from typing import Any

import dpath
from jsonschema import Draft202012Validator, exceptions, validators

from feeder_scheduler.core.logger import LOGGER


def set_defaults(
    validator: type[Draft202012Validator],
    properties: dict[str, Any],
    instance: dict[str, Any],
    schema: dict[str, Any],
) -> Iterator:
    """Insert schema defaults into an instance while validating its properties.

    The signature follows the pattern required to extend a ``jsonschema`` validator:

    https://python-jsonschema.readthedocs.io/en/latest/creating/

    Args:
        validator: The validator instance.
        properties: The ``properties`` mapping of the schema being applied.
        instance: The configuration section being validated.
        schema: The schema being applied.

    Returns:
        An iterator over any validation errors in the properties.
    """
    for name, subschema in properties.items():
        if "default" in subschema:
            instance.setdefault(name, deepcopy(subschema["default"]))

    yield from Draft202012Validator.VALIDATORS["properties"](
        validator, properties, instance, schema
    )


ValidatorWithDefaults = validators.extend(
    validator=Draft202012Validator, validators={"properties": set_defaults}
)
"""A JSONSchema validator that fills in defaults from the schema."""


def load_schema(module_name: str, schema_file_path: Path) -> dict:
    """Load and check the JSON schema for a module.

    Args:
        module_name: The short module name the schema must describe (e.g. ``dms``).
        schema_file_path: The path to the JSON Schema file.

    Raises:
        FileNotFoundError: The schema path does not exist.
        json.JSONDecodeError: The file is not valid JSON.
        jsonschema.SchemaError: The file contents are not valid JSON Schema.
        ValueError: The schema does not define the module section or its required keys.
    """

    try:
        with open(schema_file_path) as schema_io:
            json_schema = json.load(schema_io)
    except FileNotFoundError:
        to_raise = FileNotFoundError(f"Schema file not found {schema_file_path}.")
        LOGGER.error(to_raise)
        raise to_raise
    except json.JSONDecodeError:
        LOGGER.error(f"JSON error in schema file {schema_file_path}")
        raise

    # The schema traceback is informative, so log and re-raise it as is.
    try:
        ValidatorWithDefaults.check_schema(json_schema)
    except exceptions.SchemaError:
        LOGGER.error(f"Module schema invalid in: {schema_file_path}")
        raise

    if module_name not in json_schema.get("properties", {}) or (
        "required" not in json_schema
    ):
        to_raise = ValueError(
            f"Missing key in module schema {module_name}: "
            "schema must define the module section and a required list"
        )
        LOGGER.error(to_raise)
        raise to_raise

    return json_schema


def merge_schemas(schemas: dict[str, dict[str, Any]]) -> dict[str, Any]:
    """Merge module schemas into a single schema for a scheduler configuration.

    The module sections are gathered under one root object and every module becomes a
    required section. Every ``properties`` block in the result is then closed with
    ``additionalProperties: false`` so that misspelt keys are reported rather than
    silently ignored.

    Args:
        schemas: A dictionary of module schemas keyed by short module name.

    Returns:
        The combined schema.
    """

    combined: dict = {
        "type": "object",
        "properties": {
            name: schema["properties"][name] for name, schema in schemas.items()
        },
        "required": list(schemas),
    }

    property_paths = [
        path for path, _ in dpath.search(combined, "**/properties", yielded=True)
    ]
    for path in property_paths:
        parent = "" if path == "properties" else path.removesuffix("/properties")
        dpath.new(obj=combined, path=f"{parent}/additionalProperties", value=False)

    return combined
