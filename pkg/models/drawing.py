"""Circular vertex orders and crossing-parity vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Tuple

Pair = Tuple[int, int]


@dataclass(frozen=True)
class CircularOrder:
    """Vertices in circular order plus the arc (start, length) covered by each cluster."""

    sequence: Tuple[int, ...]
    arcs: Mapping[str, Tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sequence", tuple(self.sequence))
        object.__setattr__(self, "arcs", dict(self.arcs))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("A circular order lists every vertex exactly once.")

    @cached_property
    def position(self) -> Dict[int, int]:
        return {vertex: index for index, vertex in enumerate(self.sequence)}

    def __len__(self) -> int:
        return len(self.sequence)

    def arc_members(self, cluster: str) -> Tuple[int, ...]:
        start, length = self.arcs[cluster]
        return self.sequence[start : start + length]


@dataclass(frozen=True)
class ParityVector:
    """One bit per unordered independent edge pair; bit i belongs to ``pairs[i]``."""

    pairs: Tuple[Pair, ...]
    bits: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if self.bits < 0 or self.bits >> len(self.pairs):
            raise ValueError("Parity bits exceed the pair index.")

    @classmethod
    def from_bits(cls, pairs: Iterable[Pair], values: Iterable[int]) -> ParityVector:
        packed = 0
        for index, value in enumerate(values):
            if value & 1:
                packed |= 1 << index
        return cls(pairs=tuple(pairs), bits=packed)

    @cached_property
    def index(self) -> Dict[Pair, int]:
        return {pair: position for position, pair in enumerate(self.pairs)}

    @property
    def dimension(self) -> int:
        return len(self.pairs)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def bit(self, pair: Pair) -> int:
        key = pair if pair[0] <= pair[1] else (pair[1], pair[0])
        return (self.bits >> self.index[key]) & 1

    def to_list(self) -> List[int]:
        return [(self.bits >> position) & 1 for position in range(len(self.pairs))]

    def odd_pairs(self) -> List[Pair]:
        return [pair for position, pair in enumerate(self.pairs) if (self.bits >> position) & 1]

    def add(self, packed: int) -> ParityVector:
        """GF(2) sum with a packed vector over the same pair index."""
        return ParityVector(pairs=self.pairs, bits=self.bits ^ packed)
