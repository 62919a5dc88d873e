"""Size limit for exhaustive enumeration of orders and expansions."""

from __future__ import annotations

import os
from typing import Optional

DEFAULT_CAP = 8


class CapExceeded(ValueError):
    pass


def enumeration_cap(cap: Optional[int] = None) -> int:
    """``cap`` if given, else ``$TRAVLAB_CAP``, else 8."""
    if cap is not None:
        return cap
    raw = os.environ.get("TRAVLAB_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"TRAVLAB_CAP must be an integer, got {raw!r}") from None
    return DEFAULT_CAP


def check_cap(n: int, cap: Optional[int] = None, what: str = "enumeration") -> None:
    limit = enumeration_cap(cap)
    if n > limit:
        raise CapExceeded(f"{what} over {n} elements exceeds the cap of {limit}")
