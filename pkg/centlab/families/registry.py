"""Family descriptor strings such as ``"heis:q=9"`` or ``"search:p=3,r=1,m=3,9"``."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

from centlab.config import EngineConfig
from centlab.constants import (
    DEFAULT_DENSE_TABLE_LIMIT,
    DEFAULT_FULL_SCAN_LIMIT,
    DEFAULT_MAX_ORDER,
    EXTENSION_MAX_ORDER,
)
from centlab.engine.group import GroupHandle
from centlab.errors import FamilySpecError
from centlab.families.builders import (
    central_extension,
    cyclic,
    heisenberg_mod,
    make_L,
    semidirect_cyclic,
)
from centlab.families.normal_form import ExtensionParams
from centlab.families.search import search_extensions


@dataclass(slots=True)
class FamilySpec:
    kind: str
    values: dict[str, list[int]] = field(default_factory=dict)

    def one(self, key: str, default: int | None = None) -> int:
        items = self.values.get(key)
        if not items:
            if default is None:
                raise FamilySpecError(f"{self.kind}: missing parameter '{key}'")
            return default
        if len(items) != 1:
            raise FamilySpecError(f"{self.kind}: parameter '{key}' takes one value")
        return items[0]

    def many(self, key: str) -> list[int]:
        items = self.values.get(key)
        if not items:
            raise FamilySpecError(f"{self.kind}: missing parameter '{key}'")
        return list(items)

    def __str__(self) -> str:
        body = ",".join(f"{k}={','.join(str(v) for v in vs)}" for k, vs in self.values.items())
        return f"{self.kind}:{body}"


@dataclass(slots=True)
class BuiltFamily:
    name: str
    group: GroupHandle


def parse_family_spec(text: str) -> FamilySpec:
    kind, sep, body = text.strip().partition(":")
    if not sep or not kind:
        raise FamilySpecError(f"expected '<family>:<key>=<value>,...', got {text!r}")
    spec = FamilySpec(kind=kind.strip())
    current: str | None = None
    for token in filter(None, (t.strip() for t in body.split(","))):
        key, eq, raw = token.partition("=")
        if not eq:
            # bare value continues the previous key's list, as in m=3,9
            if current is None:
                raise FamilySpecError(f"value {token!r} has no key in {text!r}")
            raw, key = token, current
        key = key.strip()
        try:
            value = int(raw)
        except ValueError as exc:
            raise FamilySpecError(f"{key}: {raw!r} is not an integer") from exc
        spec.values.setdefault(key, []).append(value)
        current = key
    if kind not in FAMILY_BUILDERS:
        raise FamilySpecError(f"Unsupported family: {kind}")
    return spec


@dataclass(frozen=True, slots=True)
class BuildLimits:
    """Engine limits applied to every builder reached from a family descriptor."""

    max_order: int = DEFAULT_MAX_ORDER
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT

    @classmethod
    def from_config(cls, engine: EngineConfig) -> BuildLimits:
        return cls(
            max_order=engine.max_order,
            dense_table_limit=engine.dense_table_limit,
            full_scan_limit=engine.full_scan_limit,
        )

    def extension_max_order(self) -> int:
        return min(self.max_order, EXTENSION_MAX_ORDER)


def _extension_params(spec: FamilySpec) -> ExtensionParams:
    try:
        return ExtensionParams(
            p=spec.one("p"),
            r=spec.one("r", 0),
            m=spec.one("m"),
            alpha=spec.one("a", 0),
            beta=spec.one("b", 0),
            gamma=spec.one("g", 0),
        )
    except ValueError as exc:
        raise FamilySpecError(str(exc)) from exc


def _single(spec: FamilySpec, group: GroupHandle) -> list[BuiltFamily]:
    return [BuiltFamily(str(spec), group)]


def _build_L(spec: FamilySpec, limits: BuildLimits) -> list[BuiltFamily]:
    return _single(
        spec,
        make_L(
            spec.one("p"),
            spec.one("r", 0),
            dense_table_limit=limits.dense_table_limit,
            full_scan_limit=limits.full_scan_limit,
            max_order=limits.extension_max_order(),
        ),
    )


def _build_heis(spec: FamilySpec, limits: BuildLimits) -> list[BuiltFamily]:
    group = heisenberg_mod(
        spec.one("q"), dense_table_limit=limits.dense_table_limit, max_order=limits.max_order
    )
    return _single(spec, group)


def _build_ce(spec: FamilySpec, limits: BuildLimits) -> list[BuiltFamily]:
    group = central_extension(
        _extension_params(spec),
        full_scan=True,
        dense_table_limit=limits.dense_table_limit,
        full_scan_limit=limits.full_scan_limit,
        max_order=limits.extension_max_order(),
    )
    return _single(spec, group)


def _build_cyclic(spec: FamilySpec, limits: BuildLimits) -> list[BuiltFamily]:
    group = cyclic(spec.one("n"), dense_table_limit=limits.dense_table_limit, max_order=limits.max_order)
    return _single(spec, group)


def _build_semi(spec: FamilySpec, limits: BuildLimits) -> list[BuiltFamily]:
    group = semidirect_cyclic(
        spec.one("n"),
        spec.one("h"),
        spec.one("t"),
        dense_table_limit=limits.dense_table_limit,
        max_order=limits.max_order,
    )
    return _single(spec, group)


def _build_search(spec: FamilySpec, limits: BuildLimits) -> list[BuiltFamily]:
    p, r = spec.one("p"), spec.one("r", 1)
    found = search_extensions(
        p,
        r,
        spec.many("m"),
        progress=True,
        max_order=limits.extension_max_order(),
        dense_table_limit=limits.dense_table_limit,
        full_scan_limit=limits.full_scan_limit,
    )
    return [
        BuiltFamily(
            "ce:p={p},r={r},m={m},a={alpha},b={beta},g={gamma}".format(**item.params.to_dict()),
            item.group,
        )
        for item in found
    ]


FAMILY_BUILDERS: dict[str, Callable[[FamilySpec, BuildLimits], list[BuiltFamily]]] = {
    "L": _build_L,
    "heis": _build_heis,
    "ce": _build_ce,
    "cyclic": _build_cyclic,
    "semi": _build_semi,
    "search": _build_search,
}


def build_family(text: str | FamilySpec, limits: BuildLimits | None = None) -> list[BuiltFamily]:
    spec = parse_family_spec(text) if isinstance(text, str) else text
    builder = FAMILY_BUILDERS.get(spec.kind)
    if builder is None:
        raise FamilySpecError(f"Unsupported family: {spec.kind}")
    return builder(spec, limits or BuildLimits())
