"""The Nixon diamond preference structures over the atoms p, q, r.

r: Nixon is a republican, q: a quaker, p: a pacifist. A normal republican
is not a pacifist and a normal quaker is. Valuation v is preferred to w when
for some class both make Nixon a member, v makes him normal and w does not.
"""

from __future__ import annotations

from .choice import PreferenceStructure
from .formula import parse
from .semantics import Kind, Structure

__all__ = ["NIXON_ATOMS", "nixon_structure", "nixon_preference"]

NIXON_ATOMS = ("p", "q", "r")

_P, _NP, _Q, _R = parse("p"), parse("!p"), parse("q"), parse("r")


def nixon_structure(kind: Kind | str = Kind.CLASSICAL) -> Structure:
    return Structure(kind, NIXON_ATOMS)


def nixon_preference(kind: Kind | str = Kind.CLASSICAL) -> PreferenceStructure:
    """Identity-labelled structure; in FOUR the preferred side must also not
    be told the contrary of normality."""
    structure = nixon_structure(kind)
    four = structure.kind is not Kind.CLASSICAL
    sat = [(structure.satisfies(i, _P), structure.satisfies(i, _NP),
            structure.satisfies(i, _Q), structure.satisfies(i, _R))
           for i in range(len(structure))]
    prec = []
    for v, (vp, vnp, vq, vr) in enumerate(sat):
        for w, (wp, wnp, wq, wr) in enumerate(sat):
            republican = vr and vnp and wr and not wnp and (not four or not vp)
            quaker = vq and vp and wq and not wp and (not four or not vnp)
            if republican or quaker:
                prec.append((v, w))
    names = [f"v{i}" for i in range(len(structure))]
    return PreferenceStructure(structure, range(len(structure)), prec, names)
