"""Per-pattern-node image columns, validity overlays and support."""

from __future__ import annotations

from .errors import ParameterError


class Domain:
    """One ordered column of distinct graph nodes per pattern node.

    Column i under-approximates (or equals, when built exactly) the set of
    graph nodes that can play pattern node u_i in some full match.  Mutable
    while being filled; call freeze() before sharing.
    """

    __slots__ = ("columns", "_sets", "_frozen")

    def __init__(self, n_columns: int):
        if n_columns < 1:
            raise ParameterError("a domain needs at least one column")
        self._sets: list[set[int]] = [set() for _ in range(n_columns)]
        self.columns: list[list[int]] | None = None
        self._frozen = False

    @classmethod
    def from_columns(cls, cols: list[list[int]] | list[set[int]]) -> "Domain":
        d = cls(len(cols))
        for i, col in enumerate(cols):
            d._sets[i].update(col)
        d.freeze()
        return d

    @property
    def n_columns(self) -> int:
        return len(self._sets)

    def add(self, i: int, v: int) -> None:
        if self._frozen:
            raise ParameterError("domain is frozen")
        self._sets[i].add(v)

    def contains(self, i: int, v: int) -> bool:
        return v in self._sets[i]

    def column_set(self, i: int) -> set[int]:
        return self._sets[i]

    def column(self, i: int) -> list[int]:
        """Ascending node ids of column i (freeze first for repeated use)."""
        if self.columns is not None:
            return self.columns[i]
        return sorted(self._sets[i])

    def size(self, i: int) -> int:
        return len(self._sets[i])

    def total_entries(self) -> int:
        return sum(len(s) for s in self._sets)

    def freeze(self) -> "Domain":
        self.columns = [sorted(s) for s in self._sets]
        self._frozen = True
        return self

    def __repr__(self):
        return f"Domain({[sorted(s) for s in self._sets]})"


class ValidityOverlay:
    """Invalid marks over a shared parent Domain, private to one estimation.

    The parent Domain is cached and reused by sibling candidates, so marks
    must never touch it.
    """

    __slots__ = ("_invalid",)

    def __init__(self, n_columns: int):
        self._invalid: list[set[int]] = [set() for _ in range(n_columns)]

    def mark(self, i: int, v: int) -> None:
        self._invalid[i].add(v)

    def is_invalid(self, i: int, v: int) -> bool:
        return v in self._invalid[i]

    def invalid_set(self, i: int) -> set[int]:
        return self._invalid[i]

    def covers(self, i: int) -> bool:
        return bool(self._invalid[i])


def support_of(domain: Domain) -> int:
    """Minimum column cardinality."""
    return min(domain.size(i) for i in range(domain.n_columns))


def valid_count(domain: Domain, overlay: ValidityOverlay, i: int) -> int:
    """Column-i cardinality net of overlay marks."""
    if i >= domain.n_columns:
        raise ParameterError(f"column {i} out of range")
    return domain.size(i) - len(domain.column_set(i) & overlay.invalid_set(i))


def dump_csv(domain: Domain, label_tokens: list[str], target) -> None:
    """Debug dump: one row per column with index, label, size, first 20 ids."""
    target.write("column,label,cardinality,first_nodes\n")
    for i in range(domain.n_columns):
        col = domain.column(i)
        head = " ".join(map(str, col[:20]))
        target.write(f"{i},{label_tokens[i]},{len(col)},{head}\n")
