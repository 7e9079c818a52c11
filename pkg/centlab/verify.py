"""Verification suites comparing computed invariants with their closed-form predictions."""

from __future__ import annotations

import threading
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np

from centlab.analysis.cccgraph import ccc_graph
from centlab.analysis.centralizers import (
    CentReport,
    centralizer_spectrum,
    distinct_centralizers,
    power_invariance_holds,
    predicted_cent_count,
    predicted_cent_count_conjecture,
    predicted_spectrum,
    proper_spectrum_ok,
)
from centlab.analysis.conjugacy import (
    class_size_histogram,
    class_table,
    conjugacy_classes,
    label_types,
    predicted_census,
)
from centlab.api_objects.types import VerificationReport
from centlab.config import AppConfig
from centlab.constants import (
    DEFAULT_DENSE_TABLE_LIMIT,
    DEFAULT_FULL_SCAN_LIMIT,
    DEFAULT_GRAPH_VERTEX_BOUND,
    DEFAULT_ISO_BUDGET,
    DEFAULT_ISO_ORDER_BOUND,
    DEFAULT_MAX_ORDER,
    QUOTIENT_ABELIAN,
    QUOTIENT_NONABELIAN,
)
from centlab.engine.group import GroupHandle
from centlab.engine.queries import center, coset_map, mul, power
from centlab.errors import DescriptorError
from centlab.families.arith import is_prime, order_formula
from centlab.families.builders import heisenberg_mod, make_L
from centlab.families.identify import identify_quotient
from centlab.families.normal_form import FamilyDescriptor
from centlab.families.registry import BuildLimits
from centlab.families.search import search_extensions
from centlab.graphs.join import (
    build_M1,
    build_M2,
    build_M2_orbit,
    decompose_join,
    shape_diff,
    verify_join_structure,
)
from centlab.internal.events import EventBus
from centlab.utils.logging import debug_event, get_logger

logger = get_logger("centlab.verify")

SUITES = ("thm1", "thm2", "tables", "lemmas", "conjecture")


@dataclass(slots=True)
class VerifyOptions:
    max_order: int = DEFAULT_MAX_ORDER
    iso_order_bound: int = DEFAULT_ISO_ORDER_BOUND
    iso_budget: int = DEFAULT_ISO_BUDGET
    graph_vertex_bound: int = DEFAULT_GRAPH_VERTEX_BOUND
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT
    threads: int = 1
    progress: bool = False

    @classmethod
    def from_config(cls, config: AppConfig) -> VerifyOptions:
        return cls(
            max_order=config.engine.max_order,
            iso_order_bound=config.isomorphism.order_bound,
            iso_budget=config.isomorphism.budget,
            graph_vertex_bound=config.isomorphism.graph_vertex_bound,
            dense_table_limit=config.engine.dense_table_limit,
            full_scan_limit=config.engine.full_scan_limit,
            threads=config.verify.threads,
            progress=config.verify.progress,
        )

    def build_limits(self) -> BuildLimits:
        return BuildLimits(self.max_order, self.dense_table_limit, self.full_scan_limit)


@dataclass(slots=True)
class Exemplar:
    name: str
    group: GroupHandle
    descriptor: FamilyDescriptor
    r: int

    def family_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "order": self.group.order,
            "quotient": identify_quotient(self.group).name,
            **self.descriptor.to_dict(),
        }


def _encode(g: GroupHandle, i: int, j: int) -> int:
    decoder = g.decoder
    if decoder is None:
        raise DescriptorError(f"{g.family} has no normal-form decoder")
    return (i * decoder.q + j) * decoder.m


class VerificationRunner:
    """Runs suites over exemplar groups; exemplars are built once and shared between suites."""

    def __init__(self, options: VerifyOptions | None = None, bus: EventBus | None = None) -> None:
        self.options = options or VerifyOptions()
        self.bus = bus or EventBus()
        self._exemplars: dict[tuple[int, str, int | None], Exemplar | None] = {}
        self._lock = threading.Lock()

    # exemplars ---------------------------------------------------------

    def _heis(self, q: int) -> GroupHandle:
        return heisenberg_mod(
            q, dense_table_limit=self.options.dense_table_limit, max_order=self.options.max_order
        )

    def _L(self, p: int, r: int) -> GroupHandle:
        limits = self.options.build_limits()
        return make_L(
            p,
            r,
            dense_table_limit=limits.dense_table_limit,
            full_scan_limit=limits.full_scan_limit,
            max_order=limits.extension_max_order(),
        )

    def _abelian(self, p: int, z_order: int) -> Exemplar | None:
        q = p * p
        if z_order == q:
            g = self._heis(q)
            return Exemplar(f"heis:q={q}", g, FamilyDescriptor(p, q, QUOTIENT_ABELIAN), 0)
        return self._searched(p, 0, [z_order])

    def _searched(self, p: int, r: int, z_orders: list[int]) -> Exemplar | None:
        found = search_extensions(
            p,
            r,
            z_orders,
            limit=1,
            progress=self.options.progress,
            max_order=self.options.build_limits().extension_max_order(),
            iso_order_bound=self.options.iso_order_bound,
            iso_budget=self.options.iso_budget,
            dense_table_limit=self.options.dense_table_limit,
            full_scan_limit=self.options.full_scan_limit,
        )
        if not found:
            return None
        item = found[0]
        name = "ce:p={p},r={r},m={m},a={alpha},b={beta},g={gamma}".format(**item.params.to_dict())
        return Exemplar(name, item.group, item.descriptor, r)

    def _nonabelian(self, p: int, z_order: int | None) -> Exemplar | None:
        if z_order is not None:
            return self._searched(p, 1, [z_order])
        # no minimal |Z| is known in advance; widen from p to p^2
        return self._searched(p, 1, [p]) or self._searched(p, 1, [p * p])

    def exemplar(self, p: int, kind: str, z_order: int | None = None) -> Exemplar | None:
        key = (p, kind, z_order)
        with self._lock:
            if key in self._exemplars:
                return self._exemplars[key]
        # built outside the lock; a concurrent duplicate build is discarded by setdefault
        with self.bus.stage("exemplar", p=p, kind=kind, z=z_order):
            if kind == QUOTIENT_ABELIAN:
                made = self._abelian(p, z_order if z_order is not None else p * p)
            else:
                made = self._nonabelian(p, z_order)
        with self._lock:
            return self._exemplars.setdefault(key, made)

    def exemplar_kinds(self, p: int, z_order: int | None) -> list[str]:
        if not is_prime(p):
            raise DescriptorError(f"p must be prime, got {p}")
        kinds = []
        if z_order is None or z_order % (p * p) == 0:
            kinds.append(QUOTIENT_ABELIAN)
        if p % 2 == 1 and (z_order is None or z_order % p == 0):
            kinds.append(QUOTIENT_NONABELIAN)
        if not kinds:
            raise DescriptorError(f"no exemplar family for p={p} with |Z|={z_order}")
        return kinds

    def _per_exemplar(
        self,
        suite: str,
        p: int,
        z_order: int | None,
        body: Callable[[Exemplar, VerificationReport], None],
    ) -> list[VerificationReport]:
        reports = []
        for kind in self.exemplar_kinds(p, z_order):
            ex = self.exemplar(p, kind, z_order)
            if ex is None:
                report = VerificationReport(suite, family={"p": p, "quotient_kind": kind, "z_order": z_order})
                report.add("exemplar_found", True, False)
                reports.append(report)
                continue
            report = VerificationReport(suite, family=ex.family_dict())
            with self.bus.stage(suite, family=ex.name) as timing:
                body(ex, report)
            report.elapsed_ms[suite] = timing["elapsed_ms"]
            reports.append(report)
        return reports

    # suites ------------------------------------------------------------

    def thm1(self, p: int, z_order: int | None = None) -> list[VerificationReport]:
        return self._per_exemplar("thm1", p, z_order, self._thm1_body)

    def _thm1_body(self, ex: Exemplar, report: VerificationReport) -> None:
        g, desc, p = ex.group, ex.descriptor, ex.descriptor.p
        cent = distinct_centralizers(g, max_order=self.options.max_order)
        predicted = predicted_cent_count(p)
        report.cent = cent.to_dict(predicted)
        report.add("quotient_kind", desc.quotient_kind, describe_kind(g))
        report.add("cent_count", predicted, cent.count)
        report.add("centralizer_spectrum", predicted_spectrum(desc), centralizer_spectrum(cent))
        report.add("proper_spectrum", True, proper_spectrum_ok(g, cent, p))
        report.add(*_smallest_centralizers(g, cent, desc))

    def thm2(self, p: int, z_order: int | None = None) -> list[VerificationReport]:
        return self._per_exemplar("thm2", p, z_order, self._thm2_body)

    def _thm2_body(self, ex: Exemplar, report: VerificationReport) -> None:
        g, desc = ex.group, ex.descriptor
        p, z, n = desc.p, desc.z_order, desc.n
        budget = self.options.iso_budget
        graph = ccc_graph(g, label_types(g, desc), max_order=self.options.max_order)
        if desc.abelian:
            spec = build_M1(p, z)
            other = build_M2_orbit(p, z) if p % 2 and z % p == 0 else None
            m = desc.m_coef or 0
            vertices = n * (p * p - 1) + m * (p**4 - p * p)
        else:
            spec = build_M2_orbit(p, z)
            other = build_M1(p, z) if z % (p * p) == 0 else None
            vertices = n * (p - 1) * (p + 1) ** 2
        match = verify_join_structure(
            graph,
            spec,
            budget=budget,
            cross_check=graph.n_vertices <= self.options.graph_vertex_bound,
            vertex_bound=self.options.graph_vertex_bound,
        )
        report.graph = {"vertices": graph.n_vertices, "spec_name": spec.name, "match": match}
        report.add("vertex_count", vertices, graph.n_vertices)
        report.add("connected", True, graph.is_connected())
        report.add("join_structure", True, match, [] if match else shape_diff(decompose_join(graph), spec))
        if other is not None:
            report.add("other_shape_rejected", False, verify_join_structure(graph, other, budget=budget))
        if not desc.abelian:
            stated = build_M2(p, z)
            stated_match = verify_join_structure(graph, stated, budget=budget)
            report.graph["stated_shape_match"] = stated_match
            if not stated_match:
                report.graph["stated_shape_diff"] = shape_diff(decompose_join(graph), stated)

    def tables(self, p: int, z_order: int | None = None) -> list[VerificationReport]:
        return self._per_exemplar("tables", p, z_order, self._tables_body)

    def _tables_body(self, ex: Exemplar, report: VerificationReport) -> None:
        g, desc = ex.group, ex.descriptor
        predicted = predicted_census(desc)
        computed = class_table(g, desc)
        report.census = {**computed.to_dict(), "match": computed.as_triples() == predicted.as_triples()}
        report.add("census_rows", predicted.as_triples(), computed.as_triples())
        report.add("central_classes", predicted.central, computed.central)
        expected_hist = {1: predicted.central, **predicted.histogram()}
        report.add("class_size_histogram", expected_hist, class_size_histogram(g))
        classes = conjugacy_classes(g)
        report.add("class_equation", g.order, sum(c.size for c in classes))
        cent = distinct_centralizers(g, max_order=self.options.max_order)
        stabilizers = all(
            c.size * cent.distinct[cent.centralizer_index(c.representative)].size == g.order
            for c in classes
        )
        report.add("orbit_stabilizer", True, stabilizers)

    def lemmas(self, p: int, z_order: int | None = None) -> list[VerificationReport]:
        quotient = VerificationReport("lemmas", family={"name": f"L:p={p}", "p": p})
        with self.bus.stage("lemmas.quotient", p=p) as timing:
            self._quotient_lemmas(p, quotient)
        quotient.elapsed_ms["lemmas"] = timing["elapsed_ms"]
        return [quotient, *self._per_exemplar("lemmas", p, z_order, self._lemmas_body)]

    def _quotient_lemmas(self, p: int, report: VerificationReport) -> None:
        q = p * p
        bad_orders = []
        for r in (0, 1):
            lg = self._L(p, r)
            for i in range(q):
                for j in range(q):
                    if int(lg.element_orders[_encode(lg, i, j)]) != order_formula(p, i, j):
                        bad_orders.append([r, i, j])
        report.add("order_formula", [], bad_orders[:8])

        lg = self._L(p, 1)
        x, y = _encode(lg, 1, 0), _encode(lg, 0, 1)
        collect_bad = []
        power_bad = []
        for i in range(q):
            for j in range(q):
                lhs = mul(lg, power(lg, y, j), power(lg, x, i))
                if lhs != _encode(lg, (i * j * p + i) % q, j):
                    collect_bad.append([i, j])
                base = _encode(lg, i, j)
                for k in range(q):
                    want = _encode(lg, (k * (k - 1) // 2 * i * j * p + k * i) % q, k * j % q)
                    if power(lg, base, k) != want:
                        power_bad.append([i, j, k])
        report.add("collection_formula", [], collect_bad[:8])
        report.add("power_formula", [], power_bad[:8])

        small = self._heis(p)
        report.add("p_plus_two_centralizers", p + 2, distinct_centralizers(small).count)
        if p == 2:
            found = search_extensions(
                2,
                1,
                [2, 4],
                max_order=self.options.build_limits().extension_max_order(),
                dense_table_limit=self.options.dense_table_limit,
                full_scan_limit=self.options.full_scan_limit,
            )
            report.add("nonabelian_quotient_not_capable", 0, len(found))

    def _lemmas_body(self, ex: Exemplar, report: VerificationReport) -> None:
        g, desc, p = ex.group, ex.descriptor, ex.descriptor.p
        q = p * p
        a, b = g.generators[0], g.generators[1]
        a_pow = [power(g, a, i) for i in range(q)]
        b_pow = [power(g, b, j) for j in range(q)]

        report.add("power_invariance", True, power_invariance_holds(g, p))

        commuting = [
            [i, j]
            for i in range(1, q)
            for j in range(1, q)
            if (i % p or j % p) and mul(g, a_pow[i], b_pow[j]) == mul(g, b_pow[j], a_pow[i])
        ]
        report.add("noncommuting_normal_forms", [], commuting[:8])

        cent = distinct_centralizers(g, max_order=self.options.max_order)
        slots = [cent.centralizer_index(mul(g, a_pow[s], b)) for s in range(1, q)]
        report.add("distinct_centralizers_of_a_s_b", q - 1, len(set(slots)))

        if not desc.abelian:
            report.add(
                "central_powers_commute",
                True,
                mul(g, a_pow[p], b_pow[p]) == mul(g, b_pow[p], a_pow[p]),
            )
        else:
            report.add("classes_inside_center_cosets", True, _classes_in_cosets(g))

        report.add("conjugation_formula", [], _conjugation_mismatches(g, ex.r, p)[:8])

    def conjecture(self, p: int, n_values: Sequence[int] = (1, 2)) -> list[VerificationReport]:
        reports = []
        for n in n_values:
            if n not in (1, 2):
                raise DescriptorError(f"only n = 1 and n = 2 have exemplars, got n={n}")
            q = p**n
            report = VerificationReport("conjecture", family={"name": f"heis:q={q}", "p": p, "n": n})
            with self.bus.stage("conjecture", p=p, n=n) as timing:
                g = self._heis(q)
                count = distinct_centralizers(g, max_order=self.options.max_order).count
                predicted = predicted_cent_count_conjecture(p, n)
                report.cent = {"cent_count": count, "predicted": predicted, "match": count == predicted}
                report.add("cent_count", predicted, count)
            report.elapsed_ms["conjecture"] = timing["elapsed_ms"]
            reports.append(report)
        return reports

    # dispatch ----------------------------------------------------------

    def run(
        self,
        suite: str,
        primes: Sequence[int],
        *,
        z_order: int | None = None,
        n_values: Sequence[int] = (1, 2),
    ) -> list[VerificationReport]:
        """Run ``suite`` (or every suite for ``"all"``) per prime; output follows input order."""
        names = SUITES if suite == "all" else (suite,)
        for name in names:
            if name not in SUITES:
                raise ValueError(f"Unsupported verification suite: {name}")

        def task(item: tuple[str, int]) -> list[VerificationReport]:
            name, p = item
            if name == "conjecture":
                return self.conjecture(p, n_values)
            method: Callable[[int, int | None], list[VerificationReport]] = getattr(self, name)
            return method(p, z_order)

        jobs = [(name, p) for name in names for p in primes]
        if self.options.threads > 1:
            with ThreadPoolExecutor(max_workers=self.options.threads) as pool:
                batches = list(pool.map(task, jobs))
        else:
            batches = [task(job) for job in jobs]
        reports = [report for batch in batches for report in batch]
        debug_event(
            logger,
            "verify.finished",
            suite=suite,
            primes=list(primes),
            reports=len(reports),
            mismatches=sum(not r.match for r in reports),
        )
        logger.info(
            "Verification %s over p=%s: %s reports, %s mismatched",
            suite,
            list(primes),
            len(reports),
            sum(not r.match for r in reports),
        )
        return reports


def describe_kind(g: GroupHandle) -> str | None:
    return identify_quotient(g).kind


def _smallest_centralizers(
    g: GroupHandle, cent: CentReport, desc: FamilyDescriptor
) -> tuple[str, dict[str, Any], dict[str, Any]]:
    """Centralizers of a^s b with p not dividing s: p^2 - p distinct ones of the least proper size."""
    p, z = desc.p, desc.z_order
    a, b = g.generators[0], g.generators[1]
    slots = {
        cent.centralizer_index(mul(g, power(g, a, s), b)) for s in range(1, p * p) if s % p
    }
    sizes = sorted({cent.distinct[s].size for s in slots})
    least = min((c.size for c in cent.distinct[1:]), default=g.order)
    expected = {"distinct": p * p - p, "sizes": [p * p * z], "least_proper": p * p * z}
    computed = {"distinct": len(slots), "sizes": sizes, "least_proper": least}
    return "smallest_centralizers", expected, computed


def _classes_in_cosets(g: GroupHandle) -> bool:
    _, coset_of = coset_map(g, center(g))
    return all(
        len(set(coset_of[c.members.as_array()].tolist())) == 1 for c in conjugacy_classes(g)
    )


def _conjugation_mismatches(g: GroupHandle, r: int, p: int) -> list[list[int]]:
    """Check g^-1 x g for g = a^u b^v, x = a^i b^j against the exponent rule i + r(uj - vi)p."""
    decoder = g.decoder
    if decoder is None:
        raise DescriptorError(f"{g.family} has no normal-form decoder")
    q = p * p
    ii, jj = np.divmod(np.arange(q * q, dtype=np.int64), q)
    xs = (ii * decoder.q + jj) * decoder.m
    bad: list[list[int]] = []
    for u in range(q):
        for v in range(q):
            h = _encode(g, u, v)
            h_inv = int(g.inverse_table[h])
            conj = g.mul_many(g.mul_many(h_inv, xs), h)
            ci, cj, _ = decoder.decode_many(conj)
            want_i = (ii + r * (u * jj - v * ii) * p) % q
            wrong = np.flatnonzero((ci != want_i) | (cj != jj))
            bad.extend([u, v, int(ii[w]), int(jj[w])] for w in wrong[:2].tolist())
            if len(bad) >= 8:
                return bad
    return bad
