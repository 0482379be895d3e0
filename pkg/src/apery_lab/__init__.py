"""Exact arithmetic for Apery numbers, higher Apery-like numbers J_k(n) and their congruences."""

from .classical_apery import ApFamily, apery_rec, apery_sum
from .apery_like import jk_table, zeta_q
from .normalized import decompose, tj
from .zeta_ring import ZetaCombination

__all__ = ["ApFamily", "ZetaCombination", "apery_rec", "apery_sum", "decompose", "jk_table", "tj", "zeta_q"]
__version__ = "0.1.0"
