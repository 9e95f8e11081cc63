"""
Worked example export.
"""
from __future__ import annotations

from cdsclear.commands.schemas import InstanceDocument
from cdsclear.exceptions import ParseError
from cdsclear.instances import INSTANCES


def example_document(name: str) -> InstanceDocument:
    """The instance document of a named example.

    Raises:
        ParseError: For unknown names.
    """
    try:
        build = INSTANCES[name]
    except KeyError:
        raise ParseError(f"unknown example {name!r}; choose from {', '.join(INSTANCES)}") from None
    return InstanceDocument.from_system(build())
