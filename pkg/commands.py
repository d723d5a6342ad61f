"""
PolyBisect Commands Module
Command handlers for the polybisect command line: cell enumeration, equivalence,
fan location, polygon fan rays, count suites and cone export.
"""
import argparse
import csv
import io
import logging
import sys
from collections import Counter
from typing import Any, Dict, List, Optional

from config import (DEFAULT_SAMPLES, DEFAULT_SEED, EXIT_CODES, MAX_PAIR_ENUM_DIM, PERFORMANCE_LOGGING_ENABLED,
                    PERTURBED_POLYGONS_PER_SIZE, SAMPLE_DENOMINATOR, SAMPLE_NUMERATOR_RANGE)
from errors import (CapExceeded, DegeneratePoint, InputFormatError, InvariantBreach, PolyBisectError,
                    UnsupportedFamily)
from exact_core import QVector
from polytope import Family, UnitBall, make_ball
from polytope_io import BUILTIN_SOLIDS, builtin_solid, circle_polygon, load_ball, perturbed_polygon
from progress_tracking import create_progress_tracker
from performance_monitor import performance_monitor
from sampling import make_rng, random_generic_site
from utils import Timer, export_results_to_json, parse_site, write_text_output

from bisector import create_bisector_service
from export import build_cone_meshes, meshes_to_index, meshes_to_off
from fanlocate import locate, polygon_fan_rays, same_cone, signature_to_json

# Set up logging
logger = logging.getLogger(__name__)

# Create service instances
bisector_service = create_bisector_service()

FAMILY_CHOICES = [f.value for f in Family]


# ========================================
# SHARED HELPERS
# ========================================

def build_ball(args: argparse.Namespace) -> UnitBall:
    """The unit ball selected by --family with --dim, --vertices or --ngon."""
    family = Family(args.family)
    if family == Family.POLYGON:
        if args.vertices:
            return load_ball(args.vertices, Family.POLYGON)
        if args.ngon:
            return circle_polygon(args.ngon)
        raise InputFormatError("polygon needs --vertices FILE or --ngon n")
    if family == Family.VREP:
        if not args.vertices:
            raise InputFormatError("vrep needs --vertices FILE")
        return load_ball(args.vertices, Family.VREP)
    if args.dim is None:
        raise InputFormatError(f"{family.value} needs --dim")
    return make_ball(family, args.dim)


def emit(args: argparse.Namespace, text: str):
    """Artifacts go to --out or stdout; logs stay on stderr."""
    if getattr(args, 'out', None):
        write_text_output(args.out, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _ball_json(ball: UnitBall) -> Dict[str, Any]:
    return {"family": ball.family.value, "polytope": ball.name, "dim": ball.dim,
            "facets": ball.n_facets}


# ========================================
# CELLS / EQUIV / LOCATE / RAYS
# ========================================

def cmd_cells(args: argparse.Namespace) -> int:
    ball = build_ball(args)
    site = parse_site(args.site)
    if PERFORMANCE_LOGGING_ENABLED:
        performance_monitor.start_run(f"cells {ball.name}", ball.n_facets ** 2)
    with Timer(f"Cell enumeration on {ball.name}", logger):
        cells = bisector_service.enumerate_cells(ball, site, args.method)
        report = bisector_service.genericity(ball, site)
    if PERFORMANCE_LOGGING_ENABLED:
        performance_monitor.finish_run()

    if not report.weak_general:
        logger.warning(f"Site {site} is not in weak general position: {'; '.join(report.violations)}")

    if args.format == 'csv':
        rows = [f"{p.labels(ball)[0]},{p.labels(ball)[1]}" for p in cells]
        emit(args, "\n".join(["F,G"] + rows))
    else:
        results = {**_ball_json(ball), "site": site.to_strings(), "count": len(cells),
                   "cells": cells.to_json(ball), "genericity": report.to_json()}
        emit(args, export_results_to_json(results))
    logger.info(f"{ball.name}: {len(cells)} nonempty cells for site {site}")
    return EXIT_CODES['ok']


def _fan_verdict(ball: UnitBall, a: QVector, b: QVector) -> Optional[bool]:
    try:
        return same_cone(ball, a, b)
    except DegeneratePoint as e:
        logger.warning(f"Fan verdict omitted: {e}")
    except UnsupportedFamily as e:
        logger.info(f"Fan verdict omitted: {e}")
    return None


def cmd_equiv(args: argparse.Namespace) -> int:
    ball = build_ball(args)
    a, b = parse_site(args.site), parse_site(args.site_b)
    by_cells = bisector_service.equivalent(ball, a, b, args.method)
    by_fan = _fan_verdict(ball, a, b)
    emit(args, export_results_to_json({**_ball_json(ball), "siteA": a.to_strings(), "siteB": b.to_strings(),
                                       "equivalent": by_cells, "sameCone": by_fan}))
    if by_fan is not None and by_fan != by_cells:
        raise InvariantBreach(f"cell enumeration says {by_cells}, fan location says {by_fan} for {a} and {b}")
    return EXIT_CODES['ok']


def cmd_locate(args: argparse.Namespace) -> int:
    ball = build_ball(args)
    site = parse_site(args.site)
    signature = locate(ball, site)
    emit(args, export_results_to_json({**_ball_json(ball), "site": site.to_strings(),
                                       "signature": signature_to_json(signature)}))
    return EXIT_CODES['ok']


def cmd_rays(args: argparse.Namespace) -> int:
    ball = build_ball(args)
    if ball.family != Family.POLYGON:
        raise UnsupportedFamily("rays are listed for polygons only")
    rays = polygon_fan_rays(ball)
    emit(args, export_results_to_json({**_ball_json(ball), "count": len(rays),
                                       "rays": [r.to_json() for r in rays]}))
    return EXIT_CODES['ok']


# ========================================
# COUNT SUITE
# ========================================

def expected_count(family: Family, size: int) -> int:
    """Exact count (polygon, cube) or lower bound (l1, wasserstein) for generic sites."""
    if family == Family.POLYGON:
        return 2 * size - 1
    if family == Family.CUBE:
        return size * size - size + 1
    if family == Family.CROSS:
        return 2 ** (size - 2)
    if family == Family.ROOT_A:
        return 2 * (2 ** (size - 2) - 1)
    raise UnsupportedFamily(f"no count formula for {family.value}")


def _mode(values: List[int]) -> int:
    counts = Counter(values)
    return max(counts, key=lambda v: (counts[v], -v))


def _suite_balls(family: Family, size: int, rng, perturbed_polygons: int) -> List[UnitBall]:
    """The regular 2n-gon followed by seeded perturbed ones; one ball for the other families."""
    if family != Family.POLYGON:
        return [make_ball(family, size)]
    return [circle_polygon(size)] + [perturbed_polygon(size, rng) for _ in range(perturbed_polygons)]


def run_count_suite(family: Family, sizes: range, samples: int, seed: int,
                    perturbed_polygons: int = PERTURBED_POLYGONS_PER_SIZE) -> List[Dict[str, Any]]:
    expected_count(family, sizes.start)
    if family in (Family.CROSS, Family.ROOT_A) and sizes.stop - 1 > MAX_PAIR_ENUM_DIM:
        raise CapExceeded(f"{family.value} suites are limited to dimension {MAX_PAIR_ENUM_DIM}")
    if perturbed_polygons < 0:
        raise InputFormatError("the number of perturbed polygons cannot be negative")
    rng = make_rng(seed)
    per_size = 1 + perturbed_polygons if family == Family.POLYGON else 1
    tracker = create_progress_tracker(f"count-suite-{family.value}", len(sizes) * per_size)
    tracker.update("starting", f"Count suite for {family.value}, sizes {sizes.start}..{sizes.stop - 1}")
    tracker.start_phase("enumerating", f"{samples} sites per ball")
    rows = []
    try:
        for size in sizes:
            expected = expected_count(family, size)
            exact = family in (Family.POLYGON, Family.CUBE)
            for variant, ball in enumerate(_suite_balls(family, size, rng, perturbed_polygons)):
                name = f"{ball.name}-{variant}" if variant else ball.name
                counts = [bisector_service.cell_count(ball, random_generic_site(ball, rng)) for _ in range(samples)]
                match = all(c == expected for c in counts) if exact else all(c >= expected for c in counts)
                if not match:
                    logger.warning(f"{name}: counts {sorted(set(counts))} do not meet {expected}")
                rows.append({"family": family.value, "size": size, "polytope": name, "samples": samples,
                             "min": min(counts), "max": max(counts), "mode": _mode(counts),
                             "expected": expected, "match": "true" if match else "false"})
                tracker.advance(f"{name}: min {min(counts)}, max {max(counts)}")
    except PolyBisectError as e:
        tracker.set_error(f"Count suite stopped: {e}")
        raise
    tracker.complete({"rows": len(rows)})
    return rows


def count_suite_csv(rows: List[Dict[str, Any]], seed: int) -> str:
    buffer = io.StringIO()
    buffer.write(f"# seed={seed}\n# numerator_range={SAMPLE_NUMERATOR_RANGE}\n# denominator={SAMPLE_DENOMINATOR}\n")
    writer = csv.DictWriter(buffer, fieldnames=["family", "size", "polytope", "samples", "min", "max", "mode",
                                                "expected", "match"], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def cmd_count_suite(args: argparse.Namespace) -> int:
    family = Family(args.family)
    if args.dim_max < args.dim_min:
        raise InputFormatError("--dim-max is below --dim-min")
    if args.samples < 1:
        raise InputFormatError("--samples must be at least 1")
    if PERFORMANCE_LOGGING_ENABLED:
        performance_monitor.start_run(f"count-suite {family.value}")
    with Timer(f"Count suite for {family.value}", logger):
        rows = run_count_suite(family, range(args.dim_min, args.dim_max + 1), args.samples, args.seed,
                               perturbed_polygons=args.perturbed_polygons)
    if PERFORMANCE_LOGGING_ENABLED:
        performance_monitor.finish_run()
    emit(args, count_suite_csv(rows, args.seed))
    return EXIT_CODES['ok']


# ========================================
# CONE EXPORT
# ========================================

def cmd_export_cones(args: argparse.Namespace) -> int:
    if bool(args.vertices) == bool(args.solid):
        raise InputFormatError("export-cones needs exactly one of --vertices FILE or --solid NAME")
    ball = builtin_solid(args.solid) if args.solid else load_ball(args.vertices, Family.VREP)

    tracker = create_progress_tracker(f"export-{ball.name}", ball.n_facets ** 2, unit_phase="exporting")
    tracker.update("building_ball", f"{ball.name}: {len(ball.vertices)} vertices, {ball.n_facets} facets")
    with Timer(f"Cone export for {ball.name}", logger):
        meshes = build_cone_meshes(ball, tracker)

    index = meshes_to_index(ball, meshes)
    written = [export_results_to_json(index, f"{args.out}.json")]
    if args.format == 'off':
        write_text_output(f"{args.out}.off", meshes_to_off(meshes))
        written.append(f"{args.out}.off")
    tracker.complete({"files": written})
    sys.stdout.write("\n".join(written) + "\n")
    return EXIT_CODES['ok']


# ========================================
# PARSER
# ========================================

def _ball_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--family", choices=FAMILY_CHOICES, required=True,
                        help="polygon, cube, l1 (cross-polytope), wasserstein (root polytope) or vrep")
    parent.add_argument("--dim", type=int, help="dimension for cube, l1 and wasserstein")
    parent.add_argument("--vertices", help="JSON vertex file for polygon and vrep")
    parent.add_argument("--ngon", type=int, help="n for a 2n-gon with vertices on the unit circle")
    parent.add_argument("--out", help="output path (default: stdout)")
    return parent


def register_commands(subparsers) -> None:
    """Register all subcommands with their handlers."""
    ball_options = _ball_options()

    cells = subparsers.add_parser("cells", parents=[ball_options], help="enumerate nonempty bisector cells")
    cells.add_argument("--site", required=True, help="site difference a as p/q values, e.g. 5,2,-1")
    cells.add_argument("--format", choices=["json", "csv"], default="json")
    cells.add_argument("--method", choices=["auto", "closed", "lp"], default="auto")
    cells.set_defaults(handler=cmd_cells)

    equiv = subparsers.add_parser("equiv", parents=[ball_options], help="compare the bisectors of two sites")
    equiv.add_argument("--site", required=True)
    equiv.add_argument("--site-b", required=True)
    equiv.add_argument("--method", choices=["auto", "closed", "lp"], default="auto")
    equiv.set_defaults(handler=cmd_equiv)

    loc = subparsers.add_parser("locate", parents=[ball_options], help="fan signature of a site")
    loc.add_argument("--site", required=True)
    loc.set_defaults(handler=cmd_locate)

    rays = subparsers.add_parser("rays", parents=[ball_options], help="bisection fan rays of a polygon")
    rays.set_defaults(handler=cmd_rays)

    suite = subparsers.add_parser("count-suite", help="sampled cell counts against the count formulas")
    suite.add_argument("--family", choices=[f.value for f in Family if f != Family.VREP], required=True)
    suite.add_argument("--dim-min", type=int, required=True, help="first d (or n for 2n-gons)")
    suite.add_argument("--dim-max", type=int, required=True)
    suite.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    suite.add_argument("--seed", type=int, default=DEFAULT_SEED)
    suite.add_argument("--perturbed-polygons", type=int, default=PERTURBED_POLYGONS_PER_SIZE,
                       help="perturbed 2n-gons per n next to the regular one (polygon family)")
    suite.add_argument("--out")
    suite.set_defaults(handler=cmd_count_suite)

    export = subparsers.add_parser("export-cones", help="bisection cones of a 3-polytope intersected with it")
    export.add_argument("--vertices", help="JSON V-representation of a centrally symmetric 3-polytope")
    export.add_argument("--solid", choices=BUILTIN_SOLIDS)
    export.add_argument("--out", required=True, help="output base path; writes BASE.json and BASE.off")
    export.add_argument("--format", choices=["off", "json"], default="off")
    export.set_defaults(handler=cmd_export_cones)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polybisect",
                                     description="Exact bisectors of two sites under polyhedral norms")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser
