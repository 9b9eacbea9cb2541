"""Desk-scale caps; exceeding one raises CapExceeded instead of grinding."""

import os

from .errors import CapExceeded

MAX_ORDER = 16
MAX_PENCIL_DEGREE = 64
DEFAULT_MAX_DIM = 8


def max_dim():
    value = os.environ.get("HKIT_MAX_DIM")
    return int(value) if value else DEFAULT_MAX_DIM


def check_order(n):
    if n > MAX_ORDER:
        raise CapExceeded(f"order {n} exceeds cap {MAX_ORDER}")


def check_dim(dim):
    cap = max_dim()
    if dim > cap:
        raise CapExceeded(f"dimension {dim} exceeds cap {cap} (set HKIT_MAX_DIM to raise it)")
