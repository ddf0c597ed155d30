"""Exception types shared across the package.

The CLI maps these onto exit codes: InputError is a malformed or
inconsistent input (exit 2), ConstraintError is a refused construction,
a violated precondition on otherwise well-formed data, or an exceeded
search budget (exit 3).
"""


class InputError(ValueError):
    """Malformed input: bad file, bad value, or mismatched dimensions."""


class ConstraintError(RuntimeError):
    """A structural invariant or an explicit resource budget was violated."""
