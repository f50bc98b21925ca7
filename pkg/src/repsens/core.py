"""Symbol strings, single-character edits, and substring utilities.

Texts are sequences of non-negative integer symbols rather than bytes so that
constructions needing large parametric alphabets stay exact.  All public
position arguments are 1-based and slices are inclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

EDIT_KINDS = ("sub", "ins", "del")

# chr() ceiling; the substring matchers render symbols as codepoints.
MAX_SYMBOL = 0x10FFFF


class InputError(ValueError):
    """An argument violates an operation's contract."""


class CapabilityError(RuntimeError):
    """An input exceeds a configured exhaustive-search limit."""


class SymbolString:
    """Immutable sequence of non-negative integer symbols.

    ``at(i)`` and ``sub(i, j)`` use 1-based inclusive indexing; ``sub``
    returns the empty string when ``i > j``.
    """

    __slots__ = ("symbols", "_chars")

    def __init__(self, symbols: Iterable[int] = ()):
        syms = tuple(int(s) for s in symbols)
        for s in syms:
            if s < 0:
                raise InputError(f"symbols must be non-negative, got {s}")
            if s > MAX_SYMBOL:
                raise InputError(f"symbol {s} exceeds the supported maximum {MAX_SYMBOL}")
        self.symbols = syms
        self._chars = None

    @classmethod
    def from_text(cls, text: str) -> "SymbolString":
        """One symbol per UTF-8 byte of ``text``."""
        return cls(text.encode("utf-8"))

    @classmethod
    def from_bytes(cls, data: bytes) -> "SymbolString":
        """One symbol per byte."""
        return cls(data)

    def chars(self) -> str:
        """Codepoint rendering used by the substring matchers."""
        if self._chars is None:
            self._chars = "".join(map(chr, self.symbols))
        return self._chars

    def at(self, i: int) -> int:
        """The i-th symbol, 1-based."""
        if not 1 <= i <= len(self.symbols):
            raise InputError(f"position {i} out of range [1, {len(self.symbols)}]")
        return self.symbols[i - 1]

    def sub(self, i: int, j: int) -> "SymbolString":
        """Inclusive slice [i, j]; empty when i > j."""
        if i > j:
            return SymbolString()
        if i < 1 or j > len(self.symbols):
            raise InputError(f"slice [{i}, {j}] out of range [1, {len(self.symbols)}]")
        return SymbolString(self.symbols[i - 1 : j])

    def alphabet(self) -> frozenset[int]:
        return frozenset(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolString):
            return self.symbols == other.symbols
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"SymbolString({list(self.symbols)!r})"


@dataclass(frozen=True)
class Edit:
    """A single-character substitution, insertion, or deletion.

    Substitution and deletion positions index an existing symbol.  Insertion
    position ``i`` means "insert after position i", so ``i == 0`` prepends.
    """

    kind: str
    position: int
    symbol: int | None = None

    def __post_init__(self):
        if self.kind not in EDIT_KINDS:
            raise InputError(f"edit kind must be one of {EDIT_KINDS}, got {self.kind!r}")
        if self.kind == "del":
            if self.symbol is not None:
                raise InputError("deletion carries no symbol")
        else:
            if self.symbol is None or self.symbol < 0:
                raise InputError(f"{self.kind} edit needs a non-negative symbol")


def check_edit(T: SymbolString, e: Edit) -> None:
    """Raise InputError unless ``e`` is applicable to ``T``."""
    n = len(T)
    if e.kind == "ins":
        if not 0 <= e.position <= n:
            raise InputError(f"insertion position {e.position} out of range [0, {n}]")
    else:
        if not 1 <= e.position <= n:
            raise InputError(f"{e.kind} position {e.position} out of range [1, {n}]")


def apply_edit(T: SymbolString, e: Edit) -> SymbolString:
    """The string obtained by performing ``e`` on ``T``."""
    check_edit(T, e)
    syms = T.symbols
    i = e.position
    if e.kind == "sub":
        return SymbolString(syms[: i - 1] + (e.symbol,) + syms[i:])
    if e.kind == "ins":
        return SymbolString(syms[:i] + (e.symbol,) + syms[i:])
    return SymbolString(syms[: i - 1] + syms[i:])


def enumerate_edits(T: SymbolString, alphabet: Iterable[int]) -> Iterator[Edit]:
    """All single-character edits of ``T`` drawing symbols from ``alphabet``.

    Deterministic order: substitutions, then insertions, then deletions; within
    a kind by position, then by symbol.  Substitutions that would rewrite a
    symbol to itself are skipped.
    """
    sigma = sorted(set(alphabet))
    if not sigma:
        raise InputError("alphabet must be non-empty")
    n = len(T)
    syms = T.symbols
    for i in range(1, n + 1):
        for c in sigma:
            if c != syms[i - 1]:
                yield Edit("sub", i, c)
    for i in range(0, n + 1):
        for c in sigma:
            yield Edit("ins", i, c)
    for i in range(1, n + 1):
        yield Edit("del", i)


def distinct_substrings(T: SymbolString, k: int) -> int:
    """Number of distinct length-k substrings of ``T``."""
    n = len(T)
    if not 1 <= k <= n:
        raise InputError(f"substring length {k} out of range [1, {n}]")
    hay = T.chars()
    return len({hay[i : i + k] for i in range(n - k + 1)})


def format_symbolic(T: SymbolString) -> str:
    """One text per line: symbols as space-separated decimal integers."""
    return " ".join(str(s) for s in T.symbols)


def parse_symbolic(line: str) -> SymbolString:
    fields = line.split()
    try:
        syms = [int(f) for f in fields]
    except ValueError as exc:
        raise InputError(f"symbolic text must be decimal integers: {exc}") from exc
    return SymbolString(syms)
