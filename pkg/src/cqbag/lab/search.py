"""Bounded search for structures violating a containment instance."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from ..bageval import apply
from ..reductions import NON_TRIVIAL, ReductionInstance
from ..relcore import MARS, VENUS, SignatureError, Structure
from .gen import GenConfig, enumerate_structures, sample_structures


@dataclass(frozen=True)
class Counterexample:
    structure: Structure
    lhs: int
    rhs: int
    scale: Fraction

    def __str__(self) -> str:
        return f"{self.scale} * {self.lhs} > {self.rhs}"


def instance_signature(inst: ReductionInstance):
    return inst.qs.signature().union(inst.qb.signature())


def _skip(inst: ReductionInstance, d: Structure) -> bool:
    if inst.mode != NON_TRIVIAL:
        return False
    interp = d.interp
    return MARS in interp and VENUS in interp and interp[MARS] == interp[VENUS]


def structure_stream(cfg: GenConfig, exhaustive: bool = True) -> Iterator[Structure]:
    return enumerate_structures(cfg) if exhaustive else sample_structures(cfg)


def search_counterexample(inst: ReductionInstance, cfg: GenConfig, *, exhaustive: bool = True,
                          seeds: Iterable[Structure] = ()) -> Counterexample | None:
    """First structure d (seeds first) with scale * (qs -> d) > (qb -> d).

    ``None`` only means nothing was found within the configured bounds.
    """
    need = instance_signature(inst)
    if not cfg.signature.includes(need):
        raise SignatureError(f"search signature [{cfg.signature}] does not cover the instance [{need}]")
    for d in itertools.chain(seeds, structure_stream(cfg, exhaustive)):
        if _skip(inst, d):
            continue
        lhs, rhs = apply(inst.qs, d), apply(inst.qb, d)
        if inst.scale * lhs > rhs:
            return Counterexample(d, lhs, rhs, inst.scale)
    return None


__all__ = ["Counterexample", "search_counterexample", "structure_stream", "instance_signature"]
