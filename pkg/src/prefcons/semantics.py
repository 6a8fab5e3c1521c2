"""Classical, FOUR and J3 semantic structures.

A truth value is the set of classical values it contains: ``f = {0}``,
``t = {1}``, ``top = {0, 1}``, ``bot = {}``. Compound values follow the
membership rules (``1 in v(!a)`` iff ``0 in v(a)``, ``1 in v(a | b)`` iff
``1 in v(a)`` or ``1 in v(b)``, and so on); a valuation satisfies a formula
iff ``1`` belongs to its value.

Valuations are enumerated once per structure. The first sorted atom varies
fastest, so with atoms ``p, q, r`` the classical valuation with index ``k``
assigns ``r``, ``q``, ``p`` the bits of ``k`` from most to least significant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .formula import And, Atom, ConstFalse, ConstTrue, Formula, Not, Or, atoms as formula_atoms

__all__ = [
    "TruthValue", "Kind", "Structure", "Valuation", "UnknownAtom",
    "enumerate_valuations", "evaluate", "satisfies", "value_not", "value_or",
    "value_and", "parse_valuation",
]


class TruthValue(Enum):
    # declaration order is the canonical enumeration order
    F = "f"
    T = "t"
    TOP = "top"
    BOT = "bot"

    @property
    def has1(self) -> bool:
        return self in (TruthValue.T, TruthValue.TOP)

    @property
    def has0(self) -> bool:
        return self in (TruthValue.F, TruthValue.TOP)

    @classmethod
    def from_bits(cls, has1: bool, has0: bool) -> "TruthValue":
        if has1:
            return cls.TOP if has0 else cls.T
        return cls.F if has0 else cls.BOT

    def __str__(self):
        return self.value


class Kind(Enum):
    CLASSICAL = "classical"
    FOUR = "four"
    J3 = "j3"

    @property
    def values(self) -> tuple[TruthValue, ...]:
        if self is Kind.CLASSICAL:
            return (TruthValue.F, TruthValue.T)
        if self is Kind.J3:
            return (TruthValue.F, TruthValue.T, TruthValue.TOP)
        return (TruthValue.F, TruthValue.T, TruthValue.TOP, TruthValue.BOT)

    def __str__(self):
        return self.value


def value_not(a: TruthValue) -> TruthValue:
    return TruthValue.from_bits(a.has0, a.has1)


def value_or(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue.from_bits(a.has1 or b.has1, a.has0 and b.has0)


def value_and(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue.from_bits(a.has1 and b.has1, a.has0 or b.has0)


class UnknownAtom(KeyError):
    pass


@dataclass(frozen=True)
class Valuation:
    atoms: tuple[str, ...]
    values: tuple[TruthValue, ...]

    def __getitem__(self, atom: str) -> TruthValue:
        try:
            return self.values[self.atoms.index(atom)]
        except ValueError:
            raise UnknownAtom(atom) from None

    def as_dict(self) -> dict[str, TruthValue]:
        return dict(zip(self.atoms, self.values))

    def __str__(self):
        return " ".join(f"{a}={v}" for a, v in zip(self.atoms, self.values))


def enumerate_valuations(kind: Kind, atom_names) -> list[Valuation]:
    names = tuple(sorted(atom_names))
    if not names:
        raise ValueError("at least one atom is required")
    out = []
    # product() varies its last coordinate fastest; reverse so the first atom does
    for combo in itertools.product(kind.values, repeat=len(names)):
        out.append(Valuation(names, tuple(reversed(combo))))
    return out


def evaluate(v: Valuation, f: Formula) -> TruthValue:
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, ConstTrue):
        return TruthValue.T
    if isinstance(f, ConstFalse):
        return TruthValue.F
    if isinstance(f, Not):
        return value_not(evaluate(v, f.child))
    if isinstance(f, Or):
        return value_or(evaluate(v, f.left), evaluate(v, f.right))
    if isinstance(f, And):
        return value_and(evaluate(v, f.left), evaluate(v, f.right))
    raise TypeError(f"not a formula: {f!r}")


def satisfies(v: Valuation, f: Formula) -> bool:
    return evaluate(v, f).has1


@dataclass(frozen=True)
class Structure:
    """A finite semantic structure: all valuations of ``kind`` over ``atoms``."""

    kind: Kind
    atoms: tuple[str, ...]

    def __init__(self, kind: Kind | str, atom_names):
        object.__setattr__(self, "kind", Kind(kind))
        object.__setattr__(self, "atoms", tuple(sorted(set(atom_names))))
        if not self.atoms:
            raise ValueError("at least one atom is required")
        for a in self.atoms:
            Atom(a)

    @cached_property
    def valuations(self) -> tuple[Valuation, ...]:
        return tuple(enumerate_valuations(self.kind, self.atoms))

    @cached_property
    def _index(self) -> dict[tuple[TruthValue, ...], int]:
        return {v.values: i for i, v in enumerate(self.valuations)}

    def __len__(self):
        return len(self.valuations)

    @property
    def full(self) -> int:
        return (1 << len(self.valuations)) - 1

    def index_of(self, v: Valuation) -> int:
        return self._index[v.values]

    def evaluate(self, v: Valuation | int, f: Formula) -> TruthValue:
        if isinstance(v, int):
            v = self.valuations[v]
        missing = formula_atoms(f) - set(self.atoms)
        if missing:
            raise UnknownAtom(sorted(missing)[0])
        return evaluate(v, f)

    def satisfies(self, v: Valuation | int, f: Formula) -> bool:
        return self.evaluate(v, f).has1

    def value_vector(self, f: Formula) -> tuple[TruthValue, ...]:
        missing = formula_atoms(f) - set(self.atoms)
        if missing:
            raise UnknownAtom(sorted(missing)[0])
        return tuple(evaluate(v, f) for v in self.valuations)

    def models(self, f: Formula) -> int:
        """Bitmask of the valuations satisfying ``f``."""
        mask = 0
        for i, val in enumerate(self.value_vector(f)):
            if val.has1:
                mask |= 1 << i
        return mask

    def describe(self, mask: int) -> list[str]:
        return [f"v{i}" for i in range(len(self.valuations)) if mask >> i & 1]


_VALUE_ALIASES = {"f": TruthValue.F, "t": TruthValue.T, "top": TruthValue.TOP,
                  "bot": TruthValue.BOT}


def parse_valuation(structure: Structure, text: str) -> Valuation:
    """Parse ``p=t q=top r=f`` (or ``v<index>``); classical also takes 0/1."""
    text = text.strip()
    if text.startswith("v") and text[1:].isdigit():
        idx = int(text[1:])
        if idx >= len(structure.valuations):
            raise ValueError(f"valuation index {idx} out of range")
        return structure.valuations[idx]
    assignment = {}
    for item in text.split():
        atom, sep, raw = item.partition("=")
        if not sep:
            raise ValueError(f"expected atom=value, got {item!r}")
        raw = raw.strip().lower()
        if structure.kind is Kind.CLASSICAL and raw in ("0", "1"):
            val = TruthValue.T if raw == "1" else TruthValue.F
        elif raw in _VALUE_ALIASES:
            val = _VALUE_ALIASES[raw]
        else:
            raise ValueError(f"unknown truth value {raw!r}")
        if val not in structure.kind.values:
            raise ValueError(f"value {val} not available in {structure.kind}")
        if atom not in structure.atoms:
            raise UnknownAtom(atom)
        assignment[atom] = val
    if set(assignment) != set(structure.atoms):
        missing = sorted(set(structure.atoms) - set(assignment))
        raise ValueError(f"valuation leaves atoms unassigned: {missing}")
    return Valuation(structure.atoms, tuple(assignment[a] for a in structure.atoms))
