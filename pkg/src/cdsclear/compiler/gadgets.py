"""
Gadget catalog.

A gadget is a small financial system whose clearing rates compute one
arithmetic operation on recovery rates. Input ports are banks with a single
unit debt into the gadget, so their rate equals their inflow. Output ports
are banks without liabilities; whoever places the gadget gives each output
a unit debt (to a consumer's input port or to a sink), after which its rate
equals the value the gadget computes.

Composite gadgets (multiplication, absolute difference, max, min, doubling
and guarded rational scaling) are assembled from the primitive ones with
unit debts from outputs to inputs.
"""
from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from cdsclear.compiler.builder import NetworkBuilder
from cdsclear.core.numbers import Number, as_rational, numeric_sqrt
from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import DegenerateKindRequiresFlag, InvalidParam

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

Semantics = Callable[[Sequence[Fraction]], tuple[Number, ...]]
Planter = Callable[[Sequence[Fraction]], dict[str, Number]]


class GadgetKind(str, Enum):
    ADD = "add"
    DUP = "dup"
    SCALE_CONST = "scale_const"
    SCALE_RATIONAL_GUARDED = "scale_rational_guarded"
    POS_SUB = "pos_sub"
    ABS_DIFF = "abs_diff"
    INV = "inv"
    SQRT = "sqrt"
    SQRT_CONST = "sqrt_const"
    MUL = "mul"
    ALT_MUL = "alt_mul"
    MAX = "max"
    MIN = "min"
    DOUBLE = "double"
    CONST_SOURCE = "const_source"
    DEGENERATE_MUL = "degenerate_mul"
    DEGENERATE_DIV = "degenerate_div"


DEGENERATE_KINDS = frozenset({GadgetKind.DEGENERATE_MUL, GadgetKind.DEGENERATE_DIV})


@dataclass(frozen=True)
class GadgetTemplate:
    """One gadget over local bank ids.

    ``semantics`` maps input rates to the values of ``outputs + taps``.
    Taps are observation points that already carry a unit liability and
    must not be wired. ``planter`` is set for gadgets whose auxiliary graph
    has a switched cycle; it returns exact rates for a set of banks that,
    once pinned, leave every other rate determined by propagation.
    """

    kind: GadgetKind
    params: tuple[Fraction, ...]
    system: FinancialSystem
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    semantics: Semantics = field(repr=False, compare=False)
    taps: tuple[str, ...] = ()
    planter: Planter | None = field(default=None, repr=False, compare=False)

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @property
    def observed(self) -> tuple[str, ...]:
        return self.outputs + self.taps

    @property
    def degenerate(self) -> bool:
        return self.kind in DEGENERATE_KINDS

    def evaluate(self, rates: Sequence[object]) -> tuple[Number, ...]:
        if len(rates) != self.arity:
            raise InvalidParam(f"{self.kind.value} takes {self.arity} inputs, got {len(rates)}")
        return self.semantics([as_rational(r) for r in rates])


@dataclass(frozen=True)
class Placement:
    """Global bank ids of one placed gadget."""

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    taps: tuple[str, ...]
    banks: tuple[str, ...]
    rename: dict[str, str]


def place(builder: NetworkBuilder, template: GadgetTemplate, prefix: str) -> Placement:
    """Copy ``template`` into ``builder`` with bank ids ``{prefix}/{local}``."""
    rename = builder.add_system(template.system, prefix=f"{prefix}/")
    return Placement(
        inputs=tuple(rename[b] for b in template.inputs),
        outputs=tuple(rename[b] for b in template.outputs),
        taps=tuple(rename[b] for b in template.taps),
        banks=tuple(rename.values()),
        rename=rename,
    )


# =============================================================================
# Primitive gadgets
# =============================================================================

def _add(k: int) -> GadgetTemplate:
    net = NetworkBuilder()
    inputs = tuple(net.bank(f"in{j}") for j in range(1, k + 1))
    out = net.bank("out")
    for port in inputs:
        net.debt(port, out)
    return GadgetTemplate(
        GadgetKind.ADD, (Fraction(k),), net.build(), inputs, (out,),
        semantics=lambda r: (min(ONE, sum(r, ZERO)),),
    )


def _dup(kind: GadgetKind, c: Fraction) -> GadgetTemplate:
    net = NetworkBuilder()
    port = net.bank("in")
    for name in ("n1", "out1"):
        net.bank(name)
    net.bank("n2", ONE)
    for name in ("n3", "n4"):
        net.bank(name)
    net.bank("n5", c)
    for name in ("n6", "out2"):
        net.bank(name)
    net.debt(port, "n1")
    net.debt("n1", "out1")
    net.cds("n2", "n3", "n1")
    net.debt("n3", "n4")
    if c > 0:
        net.cds("n5", "n6", "n3", c)
    net.debt("n6", "out2")
    return GadgetTemplate(
        kind, (c,), net.build(), (port,), ("out1", "out2"),
        semantics=lambda r: (r[0], c * r[0]),
    )


def _inv() -> GadgetTemplate:
    net = NetworkBuilder()
    port = net.bank("in")
    net.bank("n1")
    net.bank("n2")
    net.bank("n3", ONE)
    net.bank("n4")
    net.bank("out")
    net.debt(port, "n1")
    net.debt("n1", "n2")
    net.cds("n3", "n4", "n1")
    net.debt("n4", "out")
    return GadgetTemplate(
        GadgetKind.INV, (), net.build(), (port,), ("out",),
        semantics=lambda r: (1 - r[0],),
    )


def _pos_sub() -> GadgetTemplate:
    net = NetworkBuilder()
    first, second = net.bank("in1"), net.bank("in2")
    for name in ("n1", "n2"):
        net.bank(name)
    net.bank("n3", ONE)
    for name in ("n4", "n5", "n6"):
        net.bank(name)
    net.bank("n7", ONE)
    net.bank("out")
    net.debt(first, "n1")
    net.debt("n1", "n2")
    net.cds("n3", "n4", "n1")
    net.debt("n4", "n5")
    net.debt(second, "n5")
    net.debt("n5", "n6")
    net.cds("n7", "out", "n5")
    return GadgetTemplate(
        GadgetKind.POS_SUB, (), net.build(), (first, second), ("out",),
        semantics=lambda r: (max(ZERO, r[0] - r[1]),),
    )


def _root_pair(value: Fraction) -> Number:
    return 1 - numeric_sqrt(value)


def _sqrt() -> GadgetTemplate:
    net = NetworkBuilder()
    port = net.bank("in")
    funded = {"n2", "n5", "n8", "n19"}
    for j in range(1, 20):
        net.bank(f"n{j}", ONE if f"n{j}" in funded else ZERO)
    net.bank("out")
    net.debt(port, "n1")
    # 1 - r reaches n14 through n3, n4
    net.cds("n2", "n3", port)
    net.debt("n3", "n4")
    net.debt("n4", "n14")
    # and n10 through n6, n9
    net.cds("n5", "n6", "n3")
    net.debt("n6", "n7")
    net.cds("n8", "n9", "n6")
    net.debt("n9", "n10")
    # n10 and n14 insure each other's downstream banks
    net.debt("n10", "n11")
    net.debt("n11", "n12")
    net.cds("n10", "n13", "n15")
    net.cds("n14", "n18", "n11")
    net.debt("n14", "n15")
    net.debt("n15", "n16")
    net.debt("n16", "n17")
    net.cds("n19", "out", "n16")
    return GadgetTemplate(
        GadgetKind.SQRT, (), net.build(), (port,), ("out",),
        semantics=lambda r: (numeric_sqrt(r[0]),),
        planter=lambda r: {"n10": _root_pair(r[0]), "n14": _root_pair(r[0])},
    )


def _sqrt_const(c: Fraction) -> GadgetTemplate:
    net = NetworkBuilder()
    net.bank("n1", 1 - c)
    for name in ("n2", "n3", "n4"):
        net.bank(name)
    net.bank("n5", 1 - c)
    for name in ("n6", "n7", "n8", "n9"):
        net.bank(name)
    net.bank("n10", ONE)
    net.bank("n11")
    net.bank("out")
    net.debt("n1", "n2")
    net.cds("n1", "n4", "n6")
    net.debt("n2", "n3")
    net.cds("n5", "n9", "n2")
    net.debt("n5", "n6")
    net.debt("n6", "n7")
    net.debt("n7", "n8")
    net.cds("n10", "n11", "n7")
    net.debt("n11", "out")
    return GadgetTemplate(
        GadgetKind.SQRT_CONST, (c,), net.build(), (), ("out",),
        semantics=lambda r: (numeric_sqrt(c),),
        planter=lambda r: {"n1": _root_pair(c), "n5": _root_pair(c)},
    )


def _const_source(c: Fraction) -> GadgetTemplate:
    net = NetworkBuilder()
    net.bank("out", c)
    return GadgetTemplate(
        GadgetKind.CONST_SOURCE, (c,), net.build(), (), ("out",),
        semantics=lambda r: (c,),
    )


def _mul_core() -> GadgetTemplate:
    """Inputs x = r1/2 and y = r2/2; output x (1/2 + y) = r1 (1 + r2) / 4."""
    net = NetworkBuilder()
    net.bank("in1")
    net.bank("in2")
    for name in ("n1", "n2"):
        net.bank(name)
    net.bank("n3", ONE)
    for name in ("n4", "n5"):
        net.bank(name)
    net.bank("n6", HALF)
    for name in ("n7", "n8", "out"):
        net.bank(name)
    net.debt("in1", "n1")
    net.debt("n1", "n2")
    net.cds("n3", "n4", "n1")
    net.debt("n4", "n5")
    net.debt("in2", "n6")
    net.cds("n6", "n7", "n4")
    net.cds("n6", "n8", "n1")
    net.debt("n7", "out")
    return GadgetTemplate(
        GadgetKind.MUL, (), net.build(), ("in1", "in2"), ("out",),
        semantics=lambda r: (r[0] * (HALF + r[1]),),
    )


def _alt_mul() -> GadgetTemplate:
    net = NetworkBuilder()
    first = net.bank("in1")
    for name in ("n2", "n3"):
        net.bank(name)
    net.bank("n4", ONE)
    for name in ("n5", "n6"):
        net.bank(name)
    second = net.bank("in2")
    for name in ("n8", "n9", "n10"):
        net.bank(name)
    net.debt(first, "n2")
    net.debt("n2", "n3")
    net.cds("n4", "n5", "n2")
    net.debt("n5", "n6")
    net.debt(second, "n8")
    net.debt("n8", "n9")
    net.debt("n10", "n8")
    net.cds("n8", "n10", "n5")
    return GadgetTemplate(
        GadgetKind.ALT_MUL, (), net.build(), (first, second), ("n9",),
        semantics=lambda r: (r[1], r[0] * r[1]),
        taps=("n10",),
    )


def _degenerate_mul() -> GadgetTemplate:
    # same wiring as the core, but the insurer has no assets of its own
    system = _mul_core().system.with_assets({"n6": ZERO})
    return GadgetTemplate(
        GadgetKind.DEGENERATE_MUL, (), system, ("in1", "in2"), ("out",),
        semantics=lambda r: (r[0] * r[1],),
    )


def _ratio(r: Sequence[Fraction]) -> Fraction:
    if r[1] == 0:
        return ONE
    return min(ONE, r[0] / r[1])


def _degenerate_div() -> GadgetTemplate:
    net = NetworkBuilder()
    numerator, denominator = net.bank("in1"), net.bank("in2")
    for j in range(1, 14):
        net.bank(f"n{j}", ONE if j in (3, 9, 12) else ZERO)
    net.bank("out")
    net.debt(denominator, "n1")
    net.debt("n1", "n2")
    net.cds("n3", "n4", "n1")
    net.debt("n4", "n5")
    net.debt(numerator, "n6")
    net.cds("n6", "n7", "n4")
    net.debt("n7", "n8")
    net.cds("n9", "n10", "n6")
    net.debt("n10", "n11")
    net.cds("n12", "n13", "n10")
    net.debt("n13", "out")
    return GadgetTemplate(
        GadgetKind.DEGENERATE_DIV, (), net.build(), (numerator, denominator), ("out",),
        semantics=lambda r: (_ratio(r),),
    )


# =============================================================================
# Composite gadgets
# =============================================================================

class _Assembly:
    """Places sub-gadgets into one network and wires them with unit debts."""

    def __init__(self) -> None:
        self.net = NetworkBuilder()
        self._count = 0

    def add(self, kind: GadgetKind, *params: object) -> Placement:
        return self.add_template(instantiate_gadget(kind, params), kind.value)

    def add_template(self, template: GadgetTemplate, label: str) -> Placement:
        self._count += 1
        return place(self.net, template, f"{label}{self._count}")

    def wire(self, source: str, target: str) -> None:
        self.net.debt(source, target)

    def discard(self, source: str) -> None:
        self.net.sink(source)

    def finish(
        self,
        kind: GadgetKind,
        params: tuple[Fraction, ...],
        inputs: Sequence[str],
        outputs: Sequence[str],
        semantics: Semantics,
    ) -> GadgetTemplate:
        return GadgetTemplate(kind, params, self.net.build(), tuple(inputs), tuple(outputs), semantics)


def _mul() -> GadgetTemplate:
    asm = _Assembly()
    first = asm.add(GadgetKind.DUP, HALF)       # r1, r1/2
    quarter = asm.add(GadgetKind.DUP, QUARTER)  # r1, r1/4
    second = asm.add(GadgetKind.DUP, HALF)      # r2, r2/2
    asm.wire(first.outputs[0], quarter.inputs[0])
    asm.discard(quarter.outputs[0])
    asm.discard(second.outputs[0])

    core = asm.add_template(_mul_core(), "core")
    asm.wire(first.outputs[1], core.inputs[0])
    asm.wire(second.outputs[1], core.inputs[1])

    # r1 (1 + r2) / 4 - r1 / 4 = r1 r2 / 4
    sub = asm.add(GadgetKind.POS_SUB)
    asm.wire(core.outputs[0], sub.inputs[0])
    asm.wire(quarter.outputs[1], sub.inputs[1])

    split = asm.add(GadgetKind.DUP)
    asm.wire(sub.outputs[0], split.inputs[0])
    copies: list[str] = []
    for branch in split.outputs:
        dup = asm.add(GadgetKind.DUP)
        asm.wire(branch, dup.inputs[0])
        copies.extend(dup.outputs)
    total = asm.add(GadgetKind.ADD, 4)
    for copy, port in zip(copies, total.inputs):
        asm.wire(copy, port)
    return asm.finish(
        GadgetKind.MUL, (), (first.inputs[0], second.inputs[0]), total.outputs,
        lambda r: (r[0] * r[1],),
    )


def _abs_diff() -> GadgetTemplate:
    asm = _Assembly()
    a = asm.add(GadgetKind.DUP)
    b = asm.add(GadgetKind.DUP)
    left = asm.add(GadgetKind.POS_SUB)
    right = asm.add(GadgetKind.POS_SUB)
    asm.wire(a.outputs[0], left.inputs[0])
    asm.wire(b.outputs[0], left.inputs[1])
    asm.wire(b.outputs[1], right.inputs[0])
    asm.wire(a.outputs[1], right.inputs[1])
    total = asm.add(GadgetKind.ADD, 2)
    asm.wire(left.outputs[0], total.inputs[0])
    asm.wire(right.outputs[0], total.inputs[1])
    return asm.finish(
        GadgetKind.ABS_DIFF, (), (a.inputs[0], b.inputs[0]), total.outputs,
        lambda r: (abs(r[0] - r[1]),),
    )


def _halves(asm: _Assembly) -> tuple[Placement, Placement, str]:
    """Halve both inputs and compute ``|r1 - r2| / 2``."""
    a = asm.add(GadgetKind.DUP, HALF)
    b = asm.add(GadgetKind.DUP, HALF)
    distance = asm.add(GadgetKind.ABS_DIFF)
    asm.wire(a.outputs[0], distance.inputs[0])
    asm.wire(b.outputs[0], distance.inputs[1])
    half = asm.add(GadgetKind.DUP, HALF)
    asm.wire(distance.outputs[0], half.inputs[0])
    asm.discard(half.outputs[0])
    return a, b, half.outputs[1]


def _max() -> GadgetTemplate:
    asm = _Assembly()
    a, b, half_distance = _halves(asm)
    total = asm.add(GadgetKind.ADD, 3)
    for source, port in zip((a.outputs[1], b.outputs[1], half_distance), total.inputs):
        asm.wire(source, port)
    return asm.finish(
        GadgetKind.MAX, (), (a.inputs[0], b.inputs[0]), total.outputs,
        lambda r: (max(r[0], r[1]),),
    )


def _min() -> GadgetTemplate:
    asm = _Assembly()
    a, b, half_distance = _halves(asm)
    mean = asm.add(GadgetKind.ADD, 2)
    asm.wire(a.outputs[1], mean.inputs[0])
    asm.wire(b.outputs[1], mean.inputs[1])
    low = asm.add(GadgetKind.POS_SUB)
    asm.wire(mean.outputs[0], low.inputs[0])
    asm.wire(half_distance, low.inputs[1])
    return asm.finish(
        GadgetKind.MIN, (), (a.inputs[0], b.inputs[0]), low.outputs,
        lambda r: (min(r[0], r[1]),),
    )


def _double() -> GadgetTemplate:
    asm = _Assembly()
    dup = asm.add(GadgetKind.DUP)
    total = asm.add(GadgetKind.ADD, 2)
    asm.wire(dup.outputs[0], total.inputs[0])
    asm.wire(dup.outputs[1], total.inputs[1])
    return asm.finish(
        GadgetKind.DOUBLE, (), dup.inputs, total.outputs,
        lambda r: (min(ONE, 2 * r[0]),),
    )


def _scale_rational_guarded(q: Fraction) -> GadgetTemplate:
    asm = _Assembly()
    shrink = asm.add(GadgetKind.SCALE_CONST, Fraction(1, q.denominator))
    asm.discard(shrink.outputs[0])
    copies = [shrink.outputs[1]]
    while len(copies) < q.numerator:
        dup = asm.add(GadgetKind.DUP)
        asm.wire(copies.pop(), dup.inputs[0])
        copies.extend(dup.outputs)
    if len(copies) == 1:
        outputs = tuple(copies)
    else:
        total = asm.add(GadgetKind.ADD, len(copies))
        for copy, port in zip(copies, total.inputs):
            asm.wire(copy, port)
        outputs = total.outputs
    return asm.finish(
        GadgetKind.SCALE_RATIONAL_GUARDED, (q,), shrink.inputs, outputs,
        lambda r: (min(ONE, q * r[0]),),
    )


# =============================================================================
# Catalog
# =============================================================================

def _unit_param(kind: GadgetKind, params: tuple[Fraction, ...], default: Fraction | None = None) -> Fraction:
    if not params:
        if default is None:
            raise InvalidParam(f"{kind.value} needs a constant in [0, 1]")
        return default
    if len(params) != 1:
        raise InvalidParam(f"{kind.value} takes one parameter, got {len(params)}")
    c = params[0]
    if not 0 <= c <= 1:
        raise InvalidParam(f"{kind.value}: constant {c} outside [0, 1]")
    return c


def _no_params(kind: GadgetKind, params: tuple[Fraction, ...]) -> None:
    if params:
        raise InvalidParam(f"{kind.value} takes no parameters")


def instantiate_gadget(
    kind: GadgetKind | str,
    params: Sequence[object] = (),
    allow_degenerate: bool = False,
) -> GadgetTemplate:
    """Build the template of one catalog gadget.

    Args:
        kind: The gadget kind.
        params: ``k`` for Add, ``c`` in [0, 1] for Dup (default 1),
            ScaleConst, SqrtConst and ConstSource, ``q > 0`` for
            ScaleRationalGuarded; nothing otherwise.
        allow_degenerate: Opt in to DegenerateMul and DegenerateDiv.

    Raises:
        InvalidParam: If a parameter is missing or out of range.
        DegenerateKindRequiresFlag: For degenerate kinds without the opt-in.
    """
    kind = GadgetKind(kind)
    values = tuple(as_rational(p) for p in params)
    if kind in DEGENERATE_KINDS and not allow_degenerate:
        raise DegenerateKindRequiresFlag(
            f"{kind.value} builds a degenerate system; pass allow_degenerate=True"
        )

    if kind is GadgetKind.ADD:
        k = values[0] if values else Fraction(2)
        if len(values) > 1 or k.denominator != 1 or k < 1:
            raise InvalidParam(f"add needs a positive integer arity, got {params!r}")
        return _add(int(k))
    if kind is GadgetKind.DUP:
        return _dup(kind, _unit_param(kind, values, ONE))
    if kind is GadgetKind.SCALE_CONST:
        return _dup(kind, _unit_param(kind, values))
    if kind is GadgetKind.SQRT_CONST:
        return _sqrt_const(_unit_param(kind, values))
    if kind is GadgetKind.CONST_SOURCE:
        return _const_source(_unit_param(kind, values))
    if kind is GadgetKind.SCALE_RATIONAL_GUARDED:
        if len(values) != 1 or values[0] <= 0:
            raise InvalidParam(f"scale_rational_guarded needs one positive rational, got {params!r}")
        return _scale_rational_guarded(values[0])

    _no_params(kind, values)
    builders: dict[GadgetKind, Callable[[], GadgetTemplate]] = {
        GadgetKind.POS_SUB: _pos_sub,
        GadgetKind.ABS_DIFF: _abs_diff,
        GadgetKind.INV: _inv,
        GadgetKind.SQRT: _sqrt,
        GadgetKind.MUL: _mul,
        GadgetKind.ALT_MUL: _alt_mul,
        GadgetKind.MAX: _max,
        GadgetKind.MIN: _min,
        GadgetKind.DOUBLE: _double,
        GadgetKind.DEGENERATE_MUL: _degenerate_mul,
        GadgetKind.DEGENERATE_DIV: _degenerate_div,
    }
    template = builders[kind]()
    if template.degenerate:
        logger.debug("instantiated degenerate gadget %s", kind.value)
    return template
