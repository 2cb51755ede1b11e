"""
Monomial Orders - Term orders for polynomial rings and free modules.

Orders are looked up by name through a small registry.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, FrozenSet, Iterable, Optional, Tuple

Monomial = Tuple[int, ...]


class MonomialOrder(ABC):
    """
    A well-order on monomials of N^m, exposed as a sort key.

    ``mono_key(a) > mono_key(b)`` iff a is larger than b.
    """

    name = "abstract"

    @abstractmethod
    def mono_key(self, mono: Monomial) -> Tuple:
        ...

    def cache_token(self) -> Tuple:
        """Hashable identity used for Gröbner basis caching."""
        return (self.name,)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}{self.cache_token()[1:]}"


class GrevlexOrder(MonomialOrder):
    name = "grevlex"

    def mono_key(self, mono: Monomial) -> Tuple:
        return (sum(mono), tuple(-x for x in reversed(mono)))


class LexOrder(MonomialOrder):
    name = "lex"

    def mono_key(self, mono: Monomial) -> Tuple:
        return mono


class BlockEliminationOrder(MonomialOrder):
    """
    Grevlex on the eliminated block first, grevlex on the rest to break ties.

    Any monomial containing an eliminated variable is larger than every
    monomial free of them.
    """

    name = "elimination"

    def __init__(self, eliminate: Iterable[int]):
        self.eliminate: FrozenSet[int] = frozenset(eliminate)

    def mono_key(self, mono: Monomial) -> Tuple:
        big = tuple(e for i, e in enumerate(mono) if i in self.eliminate)
        small = tuple(e for i, e in enumerate(mono) if i not in self.eliminate)
        return (sum(big), tuple(-x for x in reversed(big)), sum(small), tuple(-x for x in reversed(small)))

    def cache_token(self) -> Tuple:
        return (self.name, tuple(sorted(self.eliminate)))


class ModuleOrder:
    """
    Extension of a monomial order to terms ``mono * e_pos`` of a free module.

    kinds:
        top   -- term over position (monomial first, lower position wins ties)
        pot   -- position over term
        split -- positions below ``split`` dominate every position at or above
                 it; inside a block, term over position.  Used for syzygy and
                 lifting computations: a basis element whose leading term sits
                 in the upper block has a zero lower block.
    """

    def __init__(self, monomial: MonomialOrder, kind: str = "top", split: int = 0):
        if kind not in ("top", "pot", "split"):
            raise ValueError(f"Unknown module order kind: {kind}")
        self.monomial = monomial
        self.kind = kind
        self.split = split

    def term_key(self, pos: int, mono: Monomial) -> Tuple:
        key = self.monomial.mono_key(mono)
        if self.kind == "top":
            return (key, -pos)
        if self.kind == "pot":
            return (-pos, key)
        return (1 if pos < self.split else 0, key, -pos)

    def cache_token(self) -> Tuple:
        return (self.kind, self.split) + self.monomial.cache_token()

    def __repr__(self) -> str:
        return f"ModuleOrder({self.monomial!r}, {self.kind}, split={self.split})"


# Registry of order classes
_ORDER_REGISTRY: Dict[str, type] = {
    "grevlex": GrevlexOrder,
    "lex": LexOrder,
    "elimination": BlockEliminationOrder,
    "block": BlockEliminationOrder,
}


def register_order(name: str, order_class: type) -> None:
    """Register a custom monomial order class."""
    _ORDER_REGISTRY[name] = order_class


def create_order(name: str, **kwargs: Any) -> MonomialOrder:
    """
    Create a monomial order by name.

    Raises:
        ValueError: If the order name is not registered.
    """
    name = name.lower()
    if name not in _ORDER_REGISTRY:
        raise ValueError(
            f"Unknown monomial order: {name}. "
            f"Available: {list(_ORDER_REGISTRY.keys())}"
        )
    return _ORDER_REGISTRY[name](**kwargs)


def module_order(name: str = "grevlex", kind: str = "top", split: int = 0,
                 eliminate: Optional[Iterable[int]] = None) -> ModuleOrder:
    """Shorthand for ``ModuleOrder(create_order(...), kind, split)``."""
    kwargs = {"eliminate": eliminate} if eliminate is not None else {}
    return ModuleOrder(create_order(name, **kwargs), kind=kind, split=split)
