"""Monomial orders as sort keys on exponent tuples.

Variables are ranked by their position in the ring: the first variable is the
largest. Every order here is a well-order refining divisibility.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable


def _lex_key(e):
    return e


@lru_cache(maxsize=1 << 18)
def _drl_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    name: str
    # block sizes for elimination orders; empty for lex / degrevlex
    blocks: tuple[int, ...] = ()
    key: Callable = field(default=_drl_key, compare=False, repr=False, hash=False)

    def __str__(self) -> str:
        if self.blocks:
            return f"{self.name}{list(self.blocks)}"
        return self.name


LEX = MonomialOrder("lex", key=_lex_key)
DEGREVLEX = MonomialOrder("degrevlex", key=_drl_key)


def block_order(sizes: tuple[int, ...] | list[int]) -> MonomialOrder:
    """Product of degrevlex orders; earlier blocks dominate later ones."""
    sizes = tuple(sizes)
    cuts = []
    start = 0
    for s in sizes:
        cuts.append((start, start + s))
        start += s

    @lru_cache(maxsize=1 << 18)
    def key(e):
        return tuple(_drl_key(e[a:b]) for a, b in cuts)

    return MonomialOrder("block", sizes, key)


def order_by_name(name: str) -> MonomialOrder:
    if name == "lex":
        return LEX
    if name == "degrevlex":
        return DEGREVLEX
    raise ValueError(f"unknown monomial order {name!r}")
