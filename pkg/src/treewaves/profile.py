"""Finite windows of doubly infinite site sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True, eq=False)
class Profile:
    """Values u_i on the contiguous index window [offset, offset + len - 1].

    ``offset`` is the lattice index of the first stored entry, so a window
    centred on the interface typically has a negative offset.  Windows are
    at least three sites long and hold only finite values.
    """

    offset: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size < 3:
            raise InvalidParameterError(
                f"profile needs a 1-d window of at least 3 sites, got shape {values.shape}"
            )
        if not np.isfinite(values).all():
            raise InvalidParameterError("profile values must all be finite")

    def __len__(self) -> int:
        return self.values.size

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.values.size)

    @property
    def last_index(self) -> int:
        return self.offset + self.values.size - 1

    def value_at(self, i: int) -> float:
        if not self.offset <= i <= self.last_index:
            raise InvalidParameterError(
                f"index {i} outside stored window [{self.offset}, {self.last_index}]"
            )
        return float(self.values[i - self.offset])

    def shifted(self, by: int) -> "Profile":
        """The same values reindexed by ``i -> i + by``."""
        return Profile(self.offset + by, self.values.copy())
