"""
Fragment cycle actions for the command line.
"""
from __future__ import annotations

from pathlib import Path

from cdsclear.commands.io import write_json
from cdsclear.commands.schemas import InstanceDocument
from cdsclear.fragments import (
    FragmentString,
    assign_arithmetic,
    emit_financial_system,
    parse_fragments,
    rewrite_to_canonical,
    solve_cycle_closed_form,
)

from .schemas import ClosedForm, FragmentResponse


def _dotted(string: FragmentString) -> str:
    return ".".join(f.family.value for f in string)


def fragment_actions(
    text: str,
    rewrite: bool = False,
    solve: bool = False,
    emit_path: Path | None = None,
) -> tuple[FragmentResponse, str | None]:
    """Parse a cycle and run the requested actions.

    Returns:
        The report, plus the emitted instance as JSON text when emission
        was asked for without a target file.

    Raises:
        UnknownFragment: For names outside the catalog.
        G3FollowedByG3OrD: If coefficients cannot be assigned.
        NotRewritable: If a closed form was asked for a cycle that does not
            reduce to g1a' copies.
    """
    cycle = parse_fragments(text, closed=True)
    arithmetic = assign_arithmetic(cycle)
    response = FragmentResponse(cycle=cycle.name, symbolic=arithmetic.render())

    if rewrite:
        canonical = rewrite_to_canonical(arithmetic)
        response.rewritten = _dotted(canonical)
        response.rewritten_symbolic = canonical.render()
    if solve:
        rate = solve_cycle_closed_form(arithmetic)
        response.closed_form = ClosedForm(surd=str(rate), decimal=rate.to_decimal(30), rational=rate.is_rational)

    emitted = None
    if emit_path is not None:
        system = emit_financial_system(arithmetic)
        document = InstanceDocument.from_system(system)
        response.emitted_banks = system.size
        if str(emit_path) == "-":
            emitted = document.model_dump_json(indent=2)
        else:
            write_json(emit_path, document)
            response.emitted_path = str(emit_path)
    return response, emitted


def fragment_lines(response: FragmentResponse) -> list[str]:
    lines = [f"cycle: {response.symbolic}"]
    if response.rewritten is not None:
        lines.append(f"rewritten: {response.rewritten}  ({response.rewritten_symbolic})")
    if response.closed_form is not None:
        lines.append(f"rate: {response.closed_form.surd} ≈ {response.closed_form.decimal}")
    if response.emitted_path is not None:
        lines.append(f"emitted {response.emitted_banks} banks to {response.emitted_path}")
    return lines
