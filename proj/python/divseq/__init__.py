"""Exact Lucas sequences over Q[T] and elliptic divisibility sequences over function fields."""

import json

from ._core import (
    Error,
    InputError,
    ResourceLimit,
    UnsupportedInput,
    amenability,
    division_polynomial,
    factor,
    lucas_terms,
    run_command,
)

__all__ = [
    "Error",
    "InputError",
    "ResourceLimit",
    "UnsupportedInput",
    "amenability",
    "division_polynomial",
    "eds_divisor",
    "factor",
    "lucas_survey",
    "lucas_terms",
    "run_command",
    "structured",
]

_EXIT_ERRORS = {1: InputError, 2: UnsupportedInput, 3: ResourceLimit}


def structured(*args, allow_unsupported=False):
    """Runs a CLI command with --format structured and returns the parsed document."""
    code, out, err = run_command([*args, "--format", "structured"])
    if code == 2 and allow_unsupported and out:
        return json.loads(out)
    if code != 0:
        raise _EXIT_ERRORS.get(code, Error)(err.strip())
    return json.loads(out)


def lucas_survey(spec, q_max=101):
    """Survey rows and summary for a Lucas spec file."""
    return structured("lucas", "survey", "--spec", str(spec), "--q-max", str(q_max), allow_unsupported=True)


def eds_divisor(spec, n=1):
    """D_nP for an EDS or isogeny-pair spec file."""
    return structured("eds", "divisor", "--spec", str(spec), "--n", str(n))["divisor"]
