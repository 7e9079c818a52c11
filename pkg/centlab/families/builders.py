"""Constructors for the concrete groups: cyclic blocks, products, L(p, r), Heisenberg groups,
and the central-extension family on normal forms ``a^i b^j z^k``."""

from __future__ import annotations

from math import gcd
from typing import Any

import numpy as np

from centlab.constants import (
    DEFAULT_DENSE_TABLE_LIMIT,
    DEFAULT_FULL_SCAN_LIMIT,
    DEFAULT_MAX_ORDER,
    EXTENSION_MAX_ORDER,
    HEISENBERG_MAX_MODULUS,
)
from centlab.engine.elements import IndexArray
from centlab.engine.group import GroupHandle, MulRule
from centlab.engine.validate import validate_axioms
from centlab.errors import InconsistentExtensionError, InvalidActionError, OrderBoundExceededError
from centlab.families.normal_form import ExtensionParams, NormalFormCodec
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.families")


def cyclic(
    n: int,
    *,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    max_order: int = DEFAULT_MAX_ORDER,
) -> GroupHandle:
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")

    def rule(xs: IndexArray, ys: IndexArray) -> IndexArray:
        return (xs + ys) % n

    return GroupHandle(
        n,
        rule,
        generators=[1] if n > 1 else [],
        family="cyclic",
        parameters={"n": n},
        dense_table_limit=dense_table_limit,
        max_order=max_order,
    )


def direct_product(
    g1: GroupHandle,
    g2: GroupHandle,
    *,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    max_order: int = DEFAULT_MAX_ORDER,
) -> GroupHandle:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > max_order:
        raise OrderBoundExceededError("direct product", n1 * n2, max_order)

    def rule(xs: IndexArray, ys: IndexArray) -> IndexArray:
        x1, x2 = np.divmod(xs, n2)
        y1, y2 = np.divmod(ys, n2)
        return g1.mul_many(x1, y1) * n2 + g2.mul_many(x2, y2)

    gens = [s * n2 + g2.identity for s in g1.generators] + [
        g1.identity * n2 + t for t in g2.generators
    ]
    return GroupHandle(
        n1 * n2,
        rule,
        identity=g1.identity * n2 + g2.identity,
        generators=gens,
        family="direct_product",
        parameters={"left": g1.describe(), "right": g2.describe()},
        dense_table_limit=dense_table_limit,
        max_order=max_order,
    )


def semidirect_cyclic(
    n_normal: int,
    n_acting: int,
    t: int,
    *,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    max_order: int = DEFAULT_MAX_ORDER,
) -> GroupHandle:
    """Z_n ⋊ Z_h on pairs ``(x, h)`` encoded as ``x*h_order + h``, with ``h x h^-1 = x^t``."""
    if n_normal < 1 or n_acting < 1:
        raise ValueError("semidirect factors must have positive order")
    if gcd(t, n_normal) != 1 or pow(t, n_acting, n_normal) != 1 % n_normal:
        raise InvalidActionError(
            f"t={t} does not define an action of Z_{n_acting} on Z_{n_normal}"
        )
    twist = np.asarray([pow(t, h, n_normal) for h in range(n_acting)], dtype=np.int64)

    def rule(xs: IndexArray, ys: IndexArray) -> IndexArray:
        x1, h1 = np.divmod(xs, n_acting)
        x2, h2 = np.divmod(ys, n_acting)
        return ((x1 + twist[h1] * x2) % n_normal) * n_acting + (h1 + h2) % n_acting

    gens = []
    if n_normal > 1:
        gens.append(n_acting)
    if n_acting > 1:
        gens.append(1)
    return GroupHandle(
        n_normal * n_acting,
        rule,
        generators=gens,
        family="semidirect_cyclic",
        parameters={"n": n_normal, "h": n_acting, "t": t},
        dense_table_limit=dense_table_limit,
        max_order=max_order,
    )


def collection_rule(params: ExtensionParams) -> MulRule:
    """Multiplication of ``a^i b^j z^k`` words by collecting ``b^j a^i`` past each other.

    ``b a = a^(1+rp) b z^gamma``; exponents on ``a`` are reduced modulo ``p^2 m``
    and overflow past ``p^2`` carries into ``z`` through ``a^(p^2) = z^alpha``
    (likewise ``b^(p^2) = z^beta``).
    """
    p, m = params.p, params.m
    q = p * p
    qm = q * m
    u = 1 + params.r * p
    twist = np.asarray([pow(u, j, qm) for j in range(q)], dtype=np.int64)
    partial = np.zeros(q, dtype=np.int64)
    for j in range(1, q):
        partial[j] = (partial[j - 1] + pow(u, j - 1, m)) % m
    alpha, beta, gamma = params.alpha, params.beta, params.gamma

    def rule(xs: IndexArray, ys: IndexArray) -> IndexArray:
        r1, k1 = np.divmod(xs, m)
        i1, j1 = np.divmod(r1, q)
        r2, k2 = np.divmod(ys, m)
        i2, j2 = np.divmod(r2, q)
        shifted = (i2 * twist[j1]) % qm
        a_total = i1 + shifted
        b_total = j1 + j2
        k = (
            k1
            + k2
            + gamma * ((i2 * partial[j1]) % m)
            + alpha * (a_total // q)
            + beta * (b_total // q)
        ) % m
        return ((a_total % q) * q + b_total % q) * m + k

    return rule


def central_extension(
    params: ExtensionParams,
    *,
    validate: bool = True,
    full_scan: bool = False,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT,
    max_order: int = EXTENSION_MAX_ORDER,
    family: str = "central_extension",
    parameters: dict[str, Any] | None = None,
    letters: tuple[str, str, str] = ("a", "b", "z"),
) -> GroupHandle:
    """Group on ``a^i b^j z^k`` under ``collection_rule(params)``.

    Validation uses Light's test over the generators; with ``full_scan`` every
    triple is compared instead, for orders up to ``full_scan_limit``.
    """
    order = params.order
    if order > max_order:
        raise OrderBoundExceededError("central extension", order, max_order)
    codec = NormalFormCodec(params.p * params.p, params.m, letters=letters)
    rule = collection_rule(params)
    gens = [codec.encode(1, 0), codec.encode(0, 1)]
    if params.m > 1:
        gens.append(codec.encode(0, 0, 1))

    if validate:
        check = validate_axioms(
            order,
            rule,
            0,
            gens,
            full_scan=full_scan and order <= full_scan_limit,
            full_scan_limit=full_scan_limit,
        )
        if not check.ok:
            debug_event(logger, "extension.rejected", reason=check.reason, **params.to_dict())
            raise InconsistentExtensionError(check.reason, check.triple, params)

    return GroupHandle(
        order,
        rule,
        generators=gens,
        family=family,
        parameters=parameters if parameters is not None else params.to_dict(),
        decoder=codec,
        dense_table_limit=dense_table_limit,
        max_order=max_order,
        validate=False,
    )


def make_L(
    p: int,
    r: int,
    *,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT,
    max_order: int = EXTENSION_MAX_ORDER,
) -> GroupHandle:
    """The group ``<x, y | x^(p^2) = y^(p^2) = 1, y x = x^(rp+1) y>`` of order p^4."""
    return central_extension(
        ExtensionParams(p=p, r=r, m=1),
        full_scan=True,
        dense_table_limit=dense_table_limit,
        full_scan_limit=full_scan_limit,
        max_order=max_order,
        family="L",
        parameters={"p": p, "r": r},
        letters=("x", "y", "z"),
    )


def heisenberg_mod(
    q: int,
    *,
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT,
    max_order: int = DEFAULT_MAX_ORDER,
) -> GroupHandle:
    """Unitriangular-style group on Z_q^3 with ``(i,j,k)(i',j',k') = (i+i', j+j', k+k'+j i')``."""
    if q < 2:
        raise ValueError(f"modulus must be at least 2, got {q}")
    if q > HEISENBERG_MAX_MODULUS:
        raise OrderBoundExceededError("heisenberg modulus", q, HEISENBERG_MAX_MODULUS)
    codec = NormalFormCodec(q, q)

    def rule(xs: IndexArray, ys: IndexArray) -> IndexArray:
        r1, k1 = np.divmod(xs, q)
        i1, j1 = np.divmod(r1, q)
        r2, k2 = np.divmod(ys, q)
        i2, j2 = np.divmod(r2, q)
        return (((i1 + i2) % q) * q + (j1 + j2) % q) * q + (k1 + k2 + j1 * i2) % q

    return GroupHandle(
        q**3,
        rule,
        generators=[codec.encode(1, 0), codec.encode(0, 1)],
        family="heisenberg_mod",
        parameters={"q": q},
        decoder=codec,
        dense_table_limit=dense_table_limit,
        max_order=max_order,
    )
