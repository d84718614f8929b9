"""Classification results shared by the closed-form criteria and the oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class State(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Membership of a point in the reality domain.

    ``margin`` is the signed, scale-normalized value of the binding
    inequality (the failed one for OUTSIDE, the marginal one for BOUNDARY,
    the smallest one for INSIDE).  Exact oracle verdicts carry ``+inf`` /
    ``-inf`` / ``0``.  ``checks`` lists every evaluated ``(name, margin)``.
    """

    state: State
    witness: str = ""
    margin: float = math.inf
    checks: tuple = ()
    aux: object = None
    notes: tuple = ()

    @property
    def inside(self) -> bool:
        return self.state is State.INSIDE

    def __post_init__(self):
        if self.state is not State.INSIDE and not self.witness:
            raise ValueError("a non-inside verdict needs a witness")
