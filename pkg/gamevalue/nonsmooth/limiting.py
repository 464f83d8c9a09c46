from enum import Enum
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np
from pydantic import BaseModel

from gamevalue.candidates import PiecewiseForm
from gamevalue.candidates import Position
from gamevalue.nonsmooth.polytope import DiniPolytope

__all__ = [
    "CJClass",
    "E1Entry",
    "LimitingData",
    "limiting_gradients",
]


class CJClass(str, Enum):
    """
    Classification of a position by the emptiness of its Dini sets.
    """

    CJMINUS = "CJminus"
    CJPLUS = "CJplus"
    NEITHER = "Neither"
    SMOOTH = "Smooth"


class E1Entry(BaseModel):
    """
    A limiting spatial gradient with its partial Hamiltonian value.
    """

    s: Tuple[float, ...]
    h: float
    pieces: Tuple[int, ...]
    conflicting_h: Tuple[float, ...] = ()

    @property
    def violation(self) -> bool:
        """
        True when two pieces share this gradient but not the time derivative.
        """
        return len(self.conflicting_h) > 0


class LimitingData(BaseModel):
    """
    Limiting gradients at a position together with the Dini classification.
    """

    position: Position
    e1: List[E1Entry]
    e2: List[Tuple[float, ...]] = []
    e2_vertices: List[Tuple[float, ...]] = []
    cj_class: Optional[CJClass] = None
    inconsistent: bool = False
    sub: Optional[DiniPolytope] = None
    sup: Optional[DiniPolytope] = None

    def gradients(self) -> np.ndarray:
        return np.array([entry.s for entry in self.e1], dtype=float)

    def h_values(self) -> np.ndarray:
        return np.array([entry.h for entry in self.e1], dtype=float)

    @property
    def smooth(self) -> bool:
        return len(self.e1) == 1


def limiting_gradients(pw: PiecewiseForm, p: Position, snap: float = 1e-9, merge: float = 1e-9) -> LimitingData:
    """
    Collect the gradients of every piece active at a position.

    Equal spatial gradients are merged; a differing time derivative on a merged entry is kept as a conflict.

    :param pw: the piecewise form of the candidate
    :param p: the position
    :param snap: boundary snapping distance
    :param merge: gradient merge tolerance
    :return: the limiting data with e1 only
    """
    entries: List[E1Entry] = []
    z = p.as_array()
    for index in pw.active_pieces(p, snap=snap):
        gradient = pw.pieces[index].gradient(z)
        s, h = gradient[1:], -float(gradient[0])
        for k, entry in enumerate(entries):
            if np.max(np.abs(s - np.asarray(entry.s)), initial=0.0) <= merge:
                conflicts = entry.conflicting_h
                if abs(h - entry.h) > merge:
                    conflicts = (*conflicts, h)
                entries[k] = entry.model_copy(
                    update={"pieces": (*entry.pieces, index), "conflicting_h": conflicts},
                )
                break
        else:
            entries.append(E1Entry(s=tuple(float(v) for v in s), h=h, pieces=(index,)))
    return LimitingData(position=p, e1=entries)
