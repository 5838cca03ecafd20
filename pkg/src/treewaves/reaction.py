"""Bistable reaction nonlinearities.

Two reactions are supported: McKean's piecewise-linear caricature

    g(u; a) = -u        for u < a,
              1 - u     for u >= a,

and the comparison cubic g(u; a) = u (1 - u) (u - a).  Both have stable
equilibria at u = 0 and u = 1 and an unstable threshold at u = a in (0, 1).
The tie u = a deliberately takes the upper branch (value 1 - a), identical
to -u + H(u - a) with the Heaviside convention H(0) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParameterError


class ReactionKind(Enum):
    MCKEAN = "mckean"
    CUBIC = "cubic"


@dataclass(frozen=True)
class Reaction:
    """A bistable reaction term with detuning parameter ``a`` in (0, 1)."""

    kind: ReactionKind
    a: float

    def __post_init__(self) -> None:
        if not 0.0 < self.a < 1.0:
            raise InvalidParameterError(f"detuning a must lie in (0, 1), got {self.a}")

    def __call__(self, u: float) -> float:
        return evaluate(self, u)


def mckean(a: float) -> Reaction:
    return Reaction(ReactionKind.MCKEAN, a)


def cubic(a: float) -> Reaction:
    return Reaction(ReactionKind.CUBIC, a)


def evaluate(reaction: Reaction, u: float) -> float:
    """Evaluate the reaction at ``u``.

    Total and pure: values outside [0, 1] are evaluated as-is, since
    transient overshoot occurs during time integration.
    """
    if reaction.kind is ReactionKind.MCKEAN:
        return 1.0 - u if u >= reaction.a else -u
    return u * (1.0 - u) * (u - reaction.a)


def evaluate_heaviside_form(a: float, u: float) -> float:
    """McKean's caricature written as -u + H(u - a), with H(0) = 1.

    Agrees exactly with ``evaluate`` of the McKean reaction for every u;
    kept as a separate code path so the two can be checked against each
    other.
    """
    if not 0.0 < a < 1.0:
        raise InvalidParameterError(f"detuning a must lie in (0, 1), got {a}")
    heaviside = 1.0 if u - a >= 0.0 else 0.0
    return -u + heaviside
