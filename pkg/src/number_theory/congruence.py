"""
gcd, extended gcd and the two-modulus Chinese remainder theorem.

All arithmetic is exact on Python ints. The moduli need not be coprime:
a system is solvable iff its residues agree mod gcd(moduli), and then the
solution is unique mod lcm(moduli).
"""
from __future__ import annotations

from typing import Optional

from ..exceptions import SpecError
from ..models import CongruencePair

__all__ = ["extended_gcd", "crt_solve"]


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """
    Return (g, x, y) with g = gcd(a, b) > 0 and a*x + b*y = g.

    Raises:
        SpecError: if a = b = 0.
    """
    if a == 0 and b == 0:
        raise SpecError("extended_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def crt_solve(system: CongruencePair) -> Optional[tuple[int, int]]:
    """
    Solve x = a (mod p), x = b (mod q).

    Returns:
        (x, lcm(p, q)) with 0 <= x < lcm, or None when a != b (mod gcd(p, q)).
    """
    a, p = system.residue_a, system.modulus_a
    b, q = system.residue_b, system.modulus_b
    g, u, _ = extended_gcd(p, q)
    if (b - a) % g:
        return None
    lcm = p // g * q
    # p*u = g (mod q), so a + p*u*(b - a)/g = b (mod q)
    x = (a + p * u * ((b - a) // g)) % lcm
    return x, lcm
