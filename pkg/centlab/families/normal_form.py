"""Normal forms ``a^i b^j z^k`` and the parameter records of the presented families."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from centlab.constants import QUOTIENT_ABELIAN, QUOTIENT_NONABELIAN
from centlab.engine.elements import IndexArray
from centlab.errors import DescriptorError
from centlab.families.arith import is_prime


@dataclass(frozen=True, slots=True)
class NormalForm:
    i: int
    j: int
    k: int = 0


@dataclass(frozen=True, slots=True)
class NormalFormCodec:
    """Mixed-radix encoding ``index = (i*q + j)*m + k`` of ``a^i b^j z^k``."""

    q: int
    m: int = 1
    letters: tuple[str, str, str] = ("a", "b", "z")

    @property
    def order(self) -> int:
        return self.q * self.q * self.m

    def encode(self, i: int, j: int, k: int = 0) -> int:
        return ((i % self.q) * self.q + (j % self.q)) * self.m + (k % self.m)

    def decode(self, x: int) -> NormalForm:
        rest, k = divmod(int(x), self.m)
        i, j = divmod(rest, self.q)
        return NormalForm(i, j, k)

    def decode_many(self, xs: IndexArray) -> tuple[IndexArray, IndexArray, IndexArray]:
        xs = np.asarray(xs, dtype=np.int64)
        rest, k = np.divmod(xs, self.m)
        i, j = np.divmod(rest, self.q)
        return i, j, k

    def label(self, x: int) -> str:
        nf = self.decode(x)
        parts = [
            letter if exp == 1 else f"{letter}^{exp}"
            for letter, exp in zip(self.letters, (nf.i, nf.j, nf.k), strict=True)
            if exp
        ]
        return " ".join(parts) or "e"


@dataclass(frozen=True, slots=True)
class ExtensionParams:
    p: int
    r: int
    m: int
    alpha: int = 0
    beta: int = 0
    gamma: int = 0

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise DescriptorError(f"p must be prime, got {self.p}")
        if self.r not in (0, 1):
            raise DescriptorError(f"r must be 0 or 1, got {self.r}")
        if self.m < 1:
            raise DescriptorError(f"m must be positive, got {self.m}")
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not 0 <= value < self.m:
                raise DescriptorError(f"{name} must lie in [0, {self.m}), got {value}")

    @property
    def order(self) -> int:
        return self.p**4 * self.m

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True, slots=True)
class FamilyDescriptor:
    """Arithmetic summary of a group with quotient of order p^4: n = |Z|/p, m = |Z|/p^2."""

    p: int
    z_order: int
    quotient_kind: str

    def __post_init__(self) -> None:
        if self.quotient_kind not in (QUOTIENT_ABELIAN, QUOTIENT_NONABELIAN):
            raise DescriptorError(f"Unsupported quotient kind: {self.quotient_kind}")
        if not is_prime(self.p):
            raise DescriptorError(f"p must be prime, got {self.p}")
        if self.z_order < 1 or self.z_order % self.p:
            raise DescriptorError(f"|Z| = {self.z_order} is not a multiple of p = {self.p}")
        if self.quotient_kind == QUOTIENT_ABELIAN and self.z_order % (self.p * self.p):
            raise DescriptorError(f"abelian quotient needs p^2 | |Z|, got |Z| = {self.z_order}")

    @property
    def n(self) -> int:
        return self.z_order // self.p

    @property
    def m_coef(self) -> int | None:
        q = self.p * self.p
        return self.z_order // q if self.z_order % q == 0 else None

    @property
    def abelian(self) -> bool:
        return self.quotient_kind == QUOTIENT_ABELIAN

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "z_order": self.z_order,
            "n": self.n,
            "m_coef": self.m_coef,
            "quotient_kind": self.quotient_kind,
        }
