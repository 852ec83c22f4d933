"""Moving between the high-level (HLA) and low-level (LLA) views of a model."""

from __future__ import annotations

from dataclasses import replace

from .model import Architecture, Level
from .validator import validate


class LevelError(ValueError):
    """A model was passed at the wrong abstraction level or in an invalid state."""


def level_of(arch: Architecture) -> Level:
    return arch.level


def strip_behaviors(arch: Architecture) -> Architecture:
    return replace(arch, level=Level.HLA, nodes=tuple(replace(n, behavior=None) for n in arch.nodes))


def derive_hla(arch: Architecture) -> Architecture:
    """HLA view of a valid LLA model: same nodes, ports and connections, no behaviors."""
    if arch.level is not Level.LLA:
        raise LevelError(f"derive_hla needs an LLA model, got {arch.level.value}")
    errors = validate(arch).error_count
    if errors:
        raise LevelError(f"derive_hla needs a model without validation errors, found {errors}")
    return strip_behaviors(arch)


def _describe(c) -> str:
    return "none" if c is None else f"{c.source} -> {c.target}"


def _first_mismatch(hla: Architecture, derived: Architecture) -> list[str]:
    out = []
    if hla.name != derived.name:
        out.append(f"architecture name: {hla.name!r} != {derived.name!r}")
    for i in range(max(len(hla.nodes), len(derived.nodes))):
        a = hla.nodes[i] if i < len(hla.nodes) else None
        b = derived.nodes[i] if i < len(derived.nodes) else None
        if a == b:
            continue
        if a is None or b is None:
            present = a or b
            side = "HLA" if a is not None else "LLA"
            out.append(f"node {present.name!r} only in {side} model (position {i})")
        elif a.name != b.name:
            out.append(f"node {i}: {a.name!r} in HLA vs {b.name!r} in LLA")
        elif a.ports != b.ports:
            out.append(f"node {a.name!r}: ports differ")
        else:
            out.append(f"node {a.name!r}: kind, description or behavior differ")
        break
    for i in range(max(len(hla.connections), len(derived.connections))):
        a = hla.connections[i] if i < len(hla.connections) else None
        b = derived.connections[i] if i < len(derived.connections) else None
        if a != b:
            out.append(f"connection {i}: {_describe(a)} in HLA vs {_describe(b)} in LLA")
            break
    return out


def conforms(hla: Architecture, lla: Architecture) -> tuple[bool, list[str]]:
    """Whether ``hla`` equals the HLA derived from ``lla``; mismatches name the first differences."""
    if hla.level is not Level.HLA:
        raise LevelError(f"first argument must be an HLA model, got {hla.level.value}")
    if lla.level is not Level.LLA:
        raise LevelError(f"second argument must be an LLA model, got {lla.level.value}")
    derived = derive_hla(lla)
    if hla == derived:
        return True, []
    return False, _first_mismatch(hla, derived)
