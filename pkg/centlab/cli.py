from __future__ import annotations

import argparse
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from centlab.analysis.cccgraph import ccc_graph
from centlab.analysis.centralizers import distinct_centralizers
from centlab.analysis.conjugacy import label_types
from centlab.config import AppConfig, dump_default_config, load_config
from centlab.constants import (
    EXIT_INCONSISTENT,
    EXIT_IO,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    QUOTIENT_ABELIAN,
    QUOTIENT_NONABELIAN,
)
from centlab.engine.queries import center
from centlab.errors import (
    DescriptorError,
    FamilySpecError,
    InconsistentExtensionError,
    InvalidActionError,
    InvalidGroupError,
    IsoBudgetExceededError,
    OrderBoundExceededError,
)
from centlab.exports.dot import graph_to_dot, spec_to_dot, write_dot
from centlab.exports.json_report import graph_payload, write_json
from centlab.families.identify import describe_family, identify_quotient
from centlab.families.registry import BuildLimits, build_family
from centlab.graphs.join import JoinSpec, build_M1, build_M2, build_M2_orbit, decompose_join
from centlab.internal.events import EventBus
from centlab.utils.display.terminal import (
    print_group_json,
    print_group_summary,
    print_internal_events,
    print_reports,
    print_reports_json,
)
from centlab.utils.logging import get_logger, resolve_log_level, setup_logging
from centlab.verify import SUITES, VerificationRunner, VerifyOptions

logger = get_logger("centlab.cli")

SPEC_BUILDERS = {"m1": build_M1, "m2": build_M2, "m2orbit": build_M2_orbit}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="config.yaml")
    common.add_argument("--log-level", default=None)
    common.add_argument("--max-order", type=int, default=None)
    common.add_argument("--iso-budget", type=int, default=None)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--json", action="store_true")
    return common


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="centlab",
        description="Centralizer counts, class censuses and class-graph shapes of finite groups",
    )
    parser.add_argument("--init-config", metavar="PATH", default=None)
    sub = parser.add_subparsers(dest="command")

    build = sub.add_parser("build", parents=[common], help="build a family and summarise it")
    build.add_argument("family_spec", nargs="?", default=None)
    build.add_argument("--family", default=None)

    verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    verify.add_argument("suite", choices=[*SUITES, "all"])
    verify.add_argument("params", nargs="*", help="key=value pairs: p, z, n, r")
    verify.add_argument("--p", type=int, action="append", default=[])
    verify.add_argument("--z", type=int, default=None)
    verify.add_argument("--n", type=int, action="append", default=[])
    verify.add_argument("--r", type=int, choices=[0, 1], default=None)
    verify.add_argument("--extended", action="store_true")
    verify.add_argument("--timings", action="store_true")
    verify.add_argument("--events-limit", type=int, default=0)
    verify.add_argument("--no-progress", action="store_true")

    export = sub.add_parser("export", parents=[common], help="write DOT or JSON for a graph")
    export.add_argument("what", choices=["ccc", *SPEC_BUILDERS])
    export.add_argument("params", nargs="*", help="key=value pairs (p, z) or a family spec")
    export.add_argument("--family", default=None)
    export.add_argument("--p", type=int, default=None)
    export.add_argument("--z", type=int, default=None)
    export.add_argument("--format", choices=["dot", "json"], default="dot")
    export.add_argument("--out", default=None)
    return parser.parse_args(argv)


def _key_values(tokens: Sequence[str]) -> tuple[dict[str, int], list[str]]:
    """Split ``p=3`` style tokens from anything else (such as family specs)."""
    values: dict[str, int] = {}
    rest: list[str] = []
    for token in tokens:
        key, eq, raw = token.partition("=")
        if eq and ":" not in token and key in {"p", "z", "n", "r"}:
            try:
                values[key] = int(raw)
            except ValueError as exc:
                raise FamilySpecError(f"{key}: {raw!r} is not an integer") from exc
        else:
            rest.append(token)
    return values, rest


def _apply_overrides(config: AppConfig, args: argparse.Namespace) -> AppConfig:
    if args.max_order is not None:
        config.engine.max_order = args.max_order
    if args.iso_budget is not None:
        config.isomorphism.budget = args.iso_budget
    if args.threads is not None:
        config.verify.threads = max(1, args.threads)
    config.logging.level = args.log_level or resolve_log_level(config.logging.level)
    if getattr(args, "timings", False):
        config.verify.timings = True
    if getattr(args, "no_progress", False) or args.json:
        config.verify.progress = False
    return config


def _cmd_build(args: argparse.Namespace, config: AppConfig) -> int:
    text = args.family or args.family_spec
    if not text:
        raise FamilySpecError("build needs a family spec such as heis:q=9")
    built = build_family(text, BuildLimits.from_config(config.engine))
    summaries: list[dict[str, Any]] = []
    for item in built:
        g = item.group
        ident = identify_quotient(g)
        summary: dict[str, Any] = {
            "name": item.name,
            "order": g.order,
            "center": center(g).size,
            "abelian": g.is_abelian,
            "quotient": ident.name,
            "backend": g.backend,
        }
        if g.order <= config.engine.max_order:
            summary["cent_count"] = distinct_centralizers(g, max_order=config.engine.max_order).count
        summaries.append(summary)
    if args.json:
        print_group_json(summaries)
    else:
        for summary in summaries:
            print_group_summary(summary)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, config: AppConfig) -> int:
    values, extra = _key_values(args.params)
    if extra:
        raise FamilySpecError(f"unexpected verify arguments: {extra}")
    primes = list(args.p) or ([values["p"]] if "p" in values else list(config.verify.primes))
    if args.extended and not args.p and "p" not in values:
        primes += [p for p in config.verify.extended_primes if p not in primes]
    z_order = args.z if args.z is not None else values.get("z")
    n_values = list(args.n) or ([values["n"]] if "n" in values else [1, 2])
    r = args.r if args.r is not None else values.get("r")

    bus = EventBus()
    runner = VerificationRunner(VerifyOptions.from_config(config), bus)
    reports = runner.run(args.suite, primes, z_order=z_order, n_values=n_values)
    if r is not None:
        wanted = QUOTIENT_ABELIAN if r == 0 else QUOTIENT_NONABELIAN
        reports = [rep for rep in reports if rep.family.get("quotient_kind", wanted) == wanted]

    if args.json:
        print_reports_json(reports, timings=config.verify.timings)
    else:
        print_reports(reports, timings=config.verify.timings)
        print_internal_events(bus.recent(args.events_limit))
    return EXIT_OK if all(rep.match for rep in reports) else EXIT_MISMATCH


def _export_target(args: argparse.Namespace, config: AppConfig) -> tuple[str, str, Any]:
    """Return (stem, text-or-payload kind, object) for the requested export."""
    values, extra = _key_values(args.params)
    if args.what == "ccc":
        text = args.family or (extra[0] if extra else None)
        if not text:
            raise FamilySpecError("export ccc needs a family spec such as heis:q=9")
        built = build_family(text, BuildLimits.from_config(config.engine))
        if not built:
            raise FamilySpecError(f"{text} produced no groups")
        g = built[0].group
        desc = describe_family(g)
        graph = ccc_graph(g, label_types(g, desc), max_order=config.engine.max_order)
        stem = "ccc_" + built[0].name.replace(":", "_").replace(",", "_").replace("=", "")
        return stem, "graph", graph
    p = args.p if args.p is not None else values.get("p")
    if p is None:
        raise FamilySpecError(f"export {args.what} needs p")
    z = args.z if args.z is not None else values.get("z")
    if z is None:
        z = p * p if args.what == "m1" else p
    spec = SPEC_BUILDERS[args.what](p, z)
    return f"{args.what}_p{p}_z{z}", "spec", spec


def _cmd_export(args: argparse.Namespace, config: AppConfig) -> int:
    stem, kind, target = _export_target(args, config)
    out = Path(args.out) if args.out else Path(config.exports.out_dir) / f"{stem}.{args.format}"
    if kind == "graph":
        decomposition = decompose_join(target)
        if args.format == "dot":
            text = graph_to_dot(
                target, name=stem, parts=decomposition.part_members, part_names=decomposition.part_names
            )
            path = write_dot(text, out)
        else:
            path = write_json(graph_payload(target, decomposition), out)
    else:
        spec: JoinSpec = target
        path = write_dot(spec_to_dot(spec), out) if args.format == "dot" else write_json(spec.to_dict(), out)
    logger.info("Wrote %s", path)
    return EXIT_OK


COMMANDS = {"build": _cmd_build, "verify": _cmd_verify, "export": _cmd_export}


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    if args.init_config:
        dump_default_config(args.init_config)
        print(f"Wrote default config to {args.init_config}")
        return EXIT_OK
    if args.command is None:
        print("usage: centlab {build,verify,export} ...")
        return EXIT_USAGE

    try:
        config = _apply_overrides(load_config(args.config), args)
        setup_logging(config.logging.level, force=True)
        return COMMANDS[args.command](args, config)
    except (InconsistentExtensionError, InvalidActionError, InvalidGroupError) as exc:
        logger.error("Inconsistent group parameters: %s", exc)
        return EXIT_INCONSISTENT
    except (FamilySpecError, DescriptorError, OrderBoundExceededError, IsoBudgetExceededError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("I/O failure: %s", exc)
        return EXIT_IO
    except ValueError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
