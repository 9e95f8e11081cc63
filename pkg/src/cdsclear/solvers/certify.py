"""
Strong approximation checks against exact clearing vectors.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction

from cdsclear.analysis.dedicated import check_dedicated_cds_debtor
from cdsclear.analysis.graphs import build_auxiliary_graph
from cdsclear.analysis.switching import find_weakly_switched_cycle, is_acyclic
from cdsclear.config import Settings, get_settings
from cdsclear.core.clearing import check_nondegenerate, distance_inf
from cdsclear.core.numbers import as_rational
from cdsclear.core.system import FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.exceptions import NoExactReference
from cdsclear.solvers.acyclic import solve_acyclic
from cdsclear.solvers.dedicated import solve_dedicated
from cdsclear.solvers.scc import solve_no_weakly_switched

logger = logging.getLogger(__name__)


def exact_references(system: FinancialSystem, settings: Settings | None = None) -> list[RecoveryVector]:
    """Exact clearing vectors from the first exact solver that applies.

    Raises:
        NoExactReference: If no exact solver applies to the system.
    """
    settings = settings or get_settings()
    aux = build_auxiliary_graph(system)
    if is_acyclic(aux):
        return solve_acyclic(system, settings).solutions
    nondegenerate = check_nondegenerate(system).ok
    if nondegenerate and check_dedicated_cds_debtor(system).ok:
        return solve_dedicated(system, settings).solutions
    if nondegenerate and find_weakly_switched_cycle(aux) is None:
        return solve_no_weakly_switched(system, settings).solutions
    raise NoExactReference(
        "system is cyclic and either degenerate or has a weakly switched cycle without "
        "the dedicated CDS debtor property; no exact reference solution is available"
    )


def certify_strong(
    system: FinancialSystem,
    candidate: RecoveryVector,
    eps: object,
    references: Sequence[RecoveryVector] | None = None,
    settings: Settings | None = None,
) -> bool:
    """True iff ``candidate`` lies within ``eps`` (sup norm, strict) of an exact clearing vector.

    Args:
        system: The system.
        candidate: Approximate vector in any mode.
        eps: Distance bound.
        references: Exact clearing vectors to compare against (for instance a
            fragment closed form); computed with the exact solvers when omitted.
        settings: Overrides the cached settings.

    Raises:
        NoExactReference: If ``references`` is omitted and no exact solver applies.
    """
    bound = eps if isinstance(eps, float) else as_rational(eps)
    if references is None:
        references = exact_references(system, settings)
    for reference in references:
        distance = distance_inf(candidate, reference)
        if distance < bound:
            logger.debug("candidate within %s of %s", distance, reference.render())
            return True
    return False


def half_vector(system: FinancialSystem) -> RecoveryVector:
    """The all-1/2 vector: within 1/2 of every clearing vector in the sup norm."""
    return RecoveryVector.constant(system, Fraction(1, 2))
