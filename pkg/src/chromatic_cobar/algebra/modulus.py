"""Quotients BP_*/I for ideals I = (2^a0, v1^a1, ...)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import NonIntegral
from .poly import Poly, gen, mono_exponent
from .rational import is_2_integral, residue_mod_2k


@dataclass(frozen=True)
class ModulusSpec:
    """Work modulo ``2**two_power`` and/or the ideal ``(2^a0, v1^a1, ...)``.

    When ``ideal_powers`` is given its first entry is the power of 2 and
    overrides ``two_power``.
    """

    two_power: Optional[int] = None
    ideal_powers: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.two_power is not None and self.two_power < 1:
            raise ValueError("two_power must be >= 1")
        if self.ideal_powers is not None:
            object.__setattr__(self, "ideal_powers", tuple(self.ideal_powers))
            if not self.ideal_powers or any(a < 1 for a in self.ideal_powers):
                raise ValueError("ideal exponents must all be >= 1")

    @classmethod
    def parse(cls, text: str) -> "ModulusSpec":
        """``"2"``, ``"4"``, ``"(2,v1^3)"``, or ``"0"`` / ``"int"`` for integral."""
        s = text.strip().replace(" ", "")
        if s in ("0", "int", "integral", ""):
            return INTEGRAL
        s = s.strip("()")
        parts = s.split(",")
        n = int(parts[0])
        if n & (n - 1) or n < 2:
            raise ValueError(f"modulus {n} is not a power of 2")
        a0 = n.bit_length() - 1
        if len(parts) == 1:
            return cls(two_power=a0)
        powers = [a0]
        for idx, part in enumerate(parts[1:], start=1):
            name, _, exp = part.partition("^")
            if name != f"v{idx}":
                raise ValueError(f"expected v{idx} in modulus, got {name!r}")
            powers.append(int(exp) if exp else 1)
        return cls(ideal_powers=tuple(powers))

    @property
    def power_of_two(self) -> Optional[int]:
        if self.ideal_powers is not None:
            return self.ideal_powers[0]
        return self.two_power

    @property
    def v_powers(self) -> Tuple[int, ...]:
        if self.ideal_powers is None:
            return ()
        return self.ideal_powers[1:]

    @property
    def is_integral(self) -> bool:
        return self.power_of_two is None and not self.v_powers

    def label(self) -> str:
        if self.is_integral:
            return "BP_*"
        parts = [str(2 ** self.power_of_two)]
        parts += [f"v{i}^{a}" if a > 1 else f"v{i}" for i, a in enumerate(self.v_powers, 1)]
        return "BP_*/(" + ",".join(parts) + ")"


INTEGRAL = ModulusSpec()
MOD2 = ModulusSpec(two_power=1)


def reduce(a: Poly, m: ModulusSpec) -> Poly:
    """Canonical representative of ``a`` modulo ``m``.

    Coefficients become least non-negative residues mod 2^N and monomials
    divisible by ``v_i^{a_i}`` are dropped.
    """
    if not a.is_integral():
        raise NonIntegral(f"cannot reduce non-integral polynomial {a}")
    n = m.power_of_two
    vgens = [(gen("v", i), e) for i, e in enumerate(m.v_powers, 1)]
    out = {}
    for mono, c in a.items():
        if any(mono_exponent(mono, g) >= e for g, e in vgens):
            continue
        if n is not None:
            c = residue_mod_2k(c, n)
        if c:
            out[mono] = c
    return Poly(out)


def check_integral(c) -> None:
    if not is_2_integral(c):
        raise NonIntegral(f"coefficient {c} has negative 2-adic valuation")
