"""
Isolated harness checks that a gadget's clearing rates match its arithmetic.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from cdsclear.analysis.graphs import build_auxiliary_graph
from cdsclear.analysis.switching import is_acyclic
from cdsclear.compiler.builder import NetworkBuilder
from cdsclear.compiler.gadgets import GadgetKind, GadgetTemplate, instantiate_gadget, place
from cdsclear.config import Settings, get_settings
from cdsclear.core.clearing import clearing_residual
from cdsclear.core.numbers import Number, NumericMode, as_rational
from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import InvalidParam, SemanticsMismatch
from cdsclear.solvers.acyclic import solve_acyclic
from cdsclear.solvers.iterate import iterate_clearing
from cdsclear.solvers.propagate import propagate_rates
from cdsclear.solvers.scc import solve_no_weakly_switched

logger = logging.getLogger(__name__)

GADGET = "gadget"


@dataclass(frozen=True)
class Harness:
    """A gadget fed by constant sources, with every output drained into a sink."""

    template: GadgetTemplate
    system: FinancialSystem
    sources: tuple[str, ...]
    observed: tuple[str, ...]


@dataclass
class HarnessRun:
    expected: tuple[Number, ...]
    observed: tuple[Number, ...]
    residual: Number
    solver: str
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.residual == 0 and all(a == b for a, b in zip(self.expected, self.observed))


def build_harness(template: GadgetTemplate, rates: Sequence[Fraction]) -> Harness:
    """One constant source bank per input port, each with a unit debt into the port."""
    net = NetworkBuilder()
    sources = tuple(net.bank(f"src{j}", rate) for j, rate in enumerate(rates))
    placed = place(net, template, GADGET)
    for source, port in zip(sources, placed.inputs):
        net.debt(source, port)
    for output in placed.outputs:
        net.sink(output)
    return Harness(template, net.build(), sources, placed.outputs + placed.taps)


def _check_rates(template: GadgetTemplate, inputs: Sequence[object]) -> list[Fraction]:
    if len(inputs) != template.arity:
        raise InvalidParam(f"{template.kind.value} takes {template.arity} inputs, got {len(inputs)}")
    rates = [as_rational(v) for v in inputs]
    for rate in rates:
        if not 0 <= rate <= 1:
            raise InvalidParam(f"input rate {rate} outside [0, 1]")
    return rates


def run_gadget(
    kind: GadgetKind | str,
    inputs: Sequence[object],
    params: Sequence[object] = (),
    settings: Settings | None = None,
) -> HarnessRun:
    """Solve the harness of one gadget and collect its observed rates.

    Gadgets with a switched cycle are solved by planting their exact rates
    and propagating in surd arithmetic; damped iteration is run alongside
    and compared when it converges. Other gadgets are solved exactly.
    """
    settings = settings or get_settings()
    template = instantiate_gadget(kind, params, allow_degenerate=True)
    rates = _check_rates(template, inputs)
    harness = build_harness(template, rates)
    expected = template.evaluate(rates)

    if template.planter is None:
        aux = build_auxiliary_graph(harness.system)
        if is_acyclic(aux):
            report = solve_acyclic(harness.system, settings)
        else:
            report = solve_no_weakly_switched(harness.system, settings)
        point = report.solution
        return HarnessRun(
            expected,
            tuple(point[b] for b in harness.observed),
            report.residual,
            report.solver.value,
        )

    hints = {f"{GADGET}/{bank}": rate for bank, rate in template.planter(rates).items()}
    point = propagate_rates(harness.system, hints, NumericMode.SURD)
    run = HarnessRun(
        expected,
        tuple(point[b] for b in harness.observed),
        clearing_residual(harness.system, point),
        "planted",
    )
    _cross_check(harness, run, settings)
    return run


def _cross_check(harness: Harness, run: HarnessRun, settings: Settings) -> None:
    report = iterate_clearing(
        harness.system,
        eps=settings.gadget_tolerance,
        max_iter=min(settings.max_iter, 20_000),
        settings=settings,
    )
    if not report.converged:
        run.notes.append(f"iteration stopped at residual {report.residual:.3e}")
        logger.debug("%s: %s", harness.template.kind.value, run.notes[-1])
        return
    iterated = report.solution
    slack = math.sqrt(settings.gadget_tolerance)
    for bank, value in zip(harness.observed, run.expected):
        gap = abs(iterated[bank] - float(value))
        if gap > slack:
            raise SemanticsMismatch(
                f"{harness.template.kind.value}: iteration gives {iterated[bank]:.12g} at {bank}, "
                f"expected {float(value):.12g}",
                residual=gap,
            )


def gadget_clearing_check(
    kind: GadgetKind | str,
    inputs: Sequence[object],
    params: Sequence[object] = (),
    settings: Settings | None = None,
) -> bool:
    """Check one gadget at one input point.

    Returns:
        True when the clearing rates of the output ports equal the
        gadget's semantics exactly.

    Raises:
        SemanticsMismatch: With the largest output gap as ``residual``.
        InvalidParam: For out-of-range inputs or parameters.
    """
    run = run_gadget(kind, inputs, params, settings)
    if not run.ok:
        gaps = [abs(a - b) for a, b in zip(run.expected, run.observed)]
        worst = max(gaps, default=Fraction(0))
        raise SemanticsMismatch(
            f"{GadgetKind(kind).value} at {tuple(str(as_rational(v)) for v in inputs)}: "
            f"expected {tuple(str(v) for v in run.expected)}, "
            f"cleared at {tuple(str(v) for v in run.observed)} (clearing residual {run.residual})",
            residual=max(worst, run.residual),
        )
    return True

