"""
Circuit compilation for the command line.
"""
from __future__ import annotations

import logging
from pathlib import Path

from cdsclear.circuits.model import SOURCE_BASIS, Circuit
from cdsclear.circuits.normalize import normalize_pipeline
from cdsclear.commands.io import write_json
from cdsclear.commands.schemas import InstanceDocument, PortMapDocument
from cdsclear.compiler import compile_circuit

from .schemas import CompileResponse

logger = logging.getLogger(__name__)


def compile_to_files(circuit: Circuit, instance_path: Path, portmap_path: Path) -> CompileResponse:
    """Normalize (when the circuit is written in the source basis), compile and write both artifacts.

    Raises:
        NotNormalized: If the circuit is neither in the source basis nor normalized.
        NotSelfMapping: If normalization shows an output always leaving [0, 1].
    """
    normalize = circuit.kinds() <= SOURCE_BASIS
    if normalize:
        circuit = normalize_pipeline(circuit)
    system, portmap = compile_circuit(circuit)
    write_json(instance_path, InstanceDocument.from_system(system))
    write_json(portmap_path, PortMapDocument(**portmap.to_dict()))
    logger.debug("compiled %d gates into %s", len(circuit.gates), instance_path)
    return CompileResponse(
        normalized=normalize,
        gates=len(circuit.gates),
        banks=system.size,
        contracts=len(system.contracts),
        inputs=list(portmap.inputs),
        instance_path=str(instance_path),
        portmap_path=str(portmap_path),
    )


def compile_lines(response: CompileResponse) -> list[str]:
    return [
        f"normalized: {'yes' if response.normalized else 'no (already normalized)'}",
        f"{response.gates} gates -> {response.banks} banks, {response.contracts} contracts",
        f"input banks: {', '.join(response.inputs)}",
        f"instance: {response.instance_path}",
        f"port map: {response.portmap_path}",
    ]
