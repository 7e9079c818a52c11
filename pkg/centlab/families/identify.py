from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any

from centlab.constants import QUOTIENT_ABELIAN, QUOTIENT_NONABELIAN
from centlab.engine.group import GroupHandle
from centlab.engine.isomorphism import isomorphic
from centlab.engine.queries import center, central_quotient
from centlab.errors import DescriptorError
from centlab.families.arith import prime_root
from centlab.families.builders import make_L
from centlab.families.normal_form import FamilyDescriptor


@dataclass(frozen=True, slots=True)
class QuotientIdentity:
    order: int
    center_order: int
    name: str
    p: int | None = None
    kind: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def identify_quotient(g: GroupHandle) -> QuotientIdentity:
    """Name G/Z(G) when it is one of the two groups of order p^4 built on Z_{p^2}."""
    z = center(g).size
    quotient = central_quotient(g)
    if quotient.order == 1:
        return QuotientIdentity(g.order, z, "trivial")
    p = prime_root(quotient.order, 4)
    if p is not None:
        q = p * p
        for r, kind, name in (
            (0, QUOTIENT_ABELIAN, f"Z{q}xZ{q}"),
            (1, QUOTIENT_NONABELIAN, f"Z{q}:Z{q}"),
        ):
            if isomorphic(quotient, make_L(p, r)) is not None:
                return QuotientIdentity(g.order, z, name, p, kind)
    return QuotientIdentity(g.order, z, f"other(order {quotient.order})")


def describe_family(g: GroupHandle) -> FamilyDescriptor:
    """FamilyDescriptor of ``g``; fails unless G/Z(G) is L(p, 0) or L(p, 1)."""
    ident = identify_quotient(g)
    if ident.p is None or ident.kind is None:
        raise DescriptorError(f"{g.family}: central quotient {ident.name} is not L(p, r)")
    return FamilyDescriptor(ident.p, ident.center_order, ident.kind)
