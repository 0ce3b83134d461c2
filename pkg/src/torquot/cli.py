"""Command-line front end: named experiments and one-shot computations.

``torquot run <name>`` reproduces one of the registered constructions or
counterexamples end to end and writes its report (plus figures on
request).  ``torquot compute <kind> --input data.json`` exposes the bare
builders for external data.

Exit codes: 0 when the report matches the experiment's expected verdict,
2 when it does not (a witnessed failure of something expected to pass, or
a reproduction that failed to find its witness), 1 for usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field

from . import cache
from .checks import (
    CheckReport,
    check_blowup_comparison,
    check_forgetful,
    check_hexagon_remark,
    check_losev_manin_iso,
    check_m2_shortcut,
    check_reduced_fibers,
    verify_generalized_cayley,
)
from .fans import fan_report, normal_fan
from .kernel.cones import Cone
from .kernel.intlinalg import smith_normal_form_diagonal
from .kernel.polyhedra import LatticePolytope
from .presets import (
    FIGURE5_FORGETFUL_WITNESS,
    NONREDUCED_WITNESS_TUPLE,
    TABLE1_ROWS,
    cayley_example,
    f2_polytope,
    f40_polytope,
    polytope_by_name,
    simplex,
)
from .quotient import (
    build_quotient_fan,
    build_r_fan,
    build_setup,
    build_subdivision,
)
from .serialize import (
    SerializeError,
    deserialize,
    format_signed_digits,
    parse_signed_digits,
    serialize,
)
from .svg import render_svg_subdivision

_CONVENTIONS = {
    "fans": "inner normal: the cone at a vertex collects the directions "
            "minimized there",
    "rays": "primitive integer vectors; each cone lists its extreme rays "
            "in ascending lexicographic order",
    "rationals": "exact strings like -3/2; integers stay JSON numbers",
    "tuple_coordinates": "an m-point tuple (x_1..x_m) is encoded by the "
                         "difference blocks y_i = x_i - x_m",
    "digit_rays": "signed single digits per coordinate: -10-11 means "
                  "(-1, 0, -1, 1)",
}

_HELP_EPILOG = """\
coordinate conventions:
  fans are inner-normal (a vertex's cone holds the directions it minimizes);
  rays are primitive integer vectors in ascending order; m-point tuples are
  encoded by difference blocks y_i = x_i - x_m; rationals are exact strings.

experiments:
  table1               the 36 maximal family-fan cones over the triangle,
                       diffed against the printed classification rows
  q-delta2-3-count     108 maximal cones in the three-point triangle quotient
  hexagon-remark       hexagon fan maps onto the line fan, three cones a side
  f2-singular          a singular two-point quotient cone (expects witness)
  blowup               d=1..3: two-point simplex quotient vs blow-up star fan
  lm-iso               m-point family over the segment vs (m+1)-point quotient
  nonreduced-f40       integer-free subdivision cell (expects witness)
  delta-reduced        reduced fibres for the d-simplex with m points
  figure5              forgetful-map interior point with no interior preimage
                       (expects witness)
  cayley-example       three skew segments assembled over [-3, 3]
  m2-lemma             two-point quotient vs mirror-refinement shortcut

parameters (--param key=value, repeatable):
  blowup: d      lm-iso: m      delta-reduced: d, m      m2-lemma: P
  P is a preset name (segment, triangle, tetrahedron, f2, f40, random-<seed>)
  or an inline JSON vertex list like [[0,0],[2,0],[0,1]].
"""


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# experiment registry


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    parameters: dict = field(default_factory=dict)
    expected: str = "pass"


def _quotient_fan(setup):
    return cache.fetch("qfan", setup.key(), lambda: build_quotient_fan(setup))


def _family_fan(setup):
    return cache.fetch("rfan", setup.key(), lambda: build_r_fan(setup))


def _digit_row(rays) -> str:
    # one table cell: the comma-joined signed-digit rays (commas also keep
    # the string from looking like a bare rational to the serializer)
    return ",".join(format_signed_digits(r) for r in rays)


def _exp_table1(params):
    fan = _family_fan(build_setup(simplex(2), 2))
    rep = fan_report(fan)
    computed = sorted(tuple(sorted(c.rays)) for c in fan.maximal_cones)
    computed_sets = {frozenset(rows) for rows in computed}
    reference = []
    missing = []
    for row, digits in TABLE1_ROWS:
        rays = frozenset(parse_signed_digits(s) for s in digits)
        reference.append({"row": row, "digits": ",".join(digits)})
        if rays not in computed_sets:
            missing.append({"row": row, "digits": ",".join(digits)})
    listed = {frozenset(parse_signed_digits(s) for s in digits)
              for _row, digits in TABLE1_ROWS}
    unlisted = [
        _digit_row(rows) for rows in computed
        if frozenset(rows) not in listed
    ]
    verdict = "pass" if not missing and not unlisted else "fail"
    details = {
        "summary": rep,
        "computed_rows": [
            {"digits": _digit_row(rows), "rays": [list(r) for r in rows]}
            for rows in computed
        ],
        "reference_rows": reference,
        "reference_rows_not_realized": [e["row"] for e in missing],
        "computed_cones_not_listed": unlisted,
    }
    return CheckReport("table1", verdict, tuple(
        "row %d: %s" % (e["row"], e["digits"]) for e in missing
    ), 0.0, details), {}


def _exp_qcount(params):
    fan = _quotient_fan(build_setup(simplex(2), 3))
    rep = fan_report(fan)
    verdict = "pass" if rep.num_maximal == 108 else "fail"
    return CheckReport("q-delta2-3-count", verdict, (), 0.0, {
        "maximal_cones": rep.num_maximal,
        "expected": 108,
        "summary": rep,
    }), {}


def _exp_hexagon(params):
    return check_hexagon_remark(), {}


def _exp_f2_singular(params):
    fan = _quotient_fan(build_setup(f2_polytope(), 2))
    target = Cone.from_rays([(1, 0), (1, 2)], ambient_dim=2)
    hit = next((c for c in fan.maximal_cones if c == target), None)
    if hit is None:
        return CheckReport("f2-singular", "fail", (), 0.0, {
            "note": "expected cone missing from the quotient fan",
            "maximal_cones": len(fan.maximal_cones),
        }), {}
    index = 1
    for s in smith_normal_form_diagonal(hit.rays):
        index *= s
    verdict = "witness" if not hit.is_smooth() else "fail"
    return CheckReport("f2-singular", verdict, (hit,), 0.0, {
        "maximal_cones": len(fan.maximal_cones),
        "smooth": hit.is_smooth(),
        "index": index,
    }), {}


def _exp_blowup(params):
    return check_blowup_comparison(params["d"]), {}


def _exp_lm_iso(params):
    return check_losev_manin_iso(params["m"]), {}


def _exp_nonreduced_f40(params):
    setup = build_setup(f40_polytope(), 4)
    rep = check_reduced_fibers(
        setup, mode="witness", vector=NONREDUCED_WITNESS_TUPLE
    )
    sub = build_subdivision(f40_polytope(), NONREDUCED_WITNESS_TUPLE)
    svg = render_svg_subdivision(sub, ((-1, 8), (-1, 5)))
    return rep, {"svg": svg}


def _exp_delta_reduced(params):
    # apply the cones-mode dimension gate before paying for any fan build
    qdim = params["d"] * (params["m"] - 1)
    if qdim > 3:
        raise UsageError(
            f"the cone-by-cone certificate handles quotient dimension <= 3, "
            f"got {qdim}; use random subdivision scans instead"
        )
    setup = build_setup(simplex(params["d"]), params["m"])
    return check_reduced_fibers(
        setup, qfan=_quotient_fan(setup), rfan=_family_fan(setup)
    ), {}


def _exp_figure5(params):
    w = FIGURE5_FORGETFUL_WITNESS
    rep = check_forgetful(
        simplex(2), 3, w["drop"], mode="witness", v=w["v"], u=w["u"]
    )
    sub = build_subdivision(simplex(2), w["u"])
    svg = render_svg_subdivision(sub, ((-2, 4), (-2, 4)))
    return rep, {"svg": svg}


def _exp_cayley(params):
    r_list, pi = cayley_example()
    return verify_generalized_cayley(r_list, pi), {}


def _exp_m2_lemma(params):
    return check_m2_shortcut(params["P"]), {}


@dataclass(frozen=True)
class _Experiment:
    build: object
    required: tuple = ()
    expected: str = "pass"


_REGISTRY = {
    "table1": _Experiment(_exp_table1),
    "q-delta2-3-count": _Experiment(_exp_qcount),
    "hexagon-remark": _Experiment(_exp_hexagon),
    "f2-singular": _Experiment(_exp_f2_singular, expected="witness"),
    "blowup": _Experiment(_exp_blowup, required=("d",)),
    "lm-iso": _Experiment(_exp_lm_iso, required=("m",)),
    "nonreduced-f40": _Experiment(_exp_nonreduced_f40, expected="witness"),
    "delta-reduced": _Experiment(_exp_delta_reduced, required=("d", "m")),
    "figure5": _Experiment(_exp_figure5, expected="witness"),
    "cayley-example": _Experiment(_exp_cayley),
    "m2-lemma": _Experiment(_exp_m2_lemma, required=("P",)),
}


def _parse_param_value(key: str, raw: str):
    if key in ("d", "m"):
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"parameter {key} must be an integer, got {raw!r}")
    if key == "P":
        if raw.lstrip().startswith("["):
            try:
                pts = json.loads(raw)
            except json.JSONDecodeError as e:
                raise UsageError(f"inline vertex list is not JSON: {e.msg}")
            try:
                return LatticePolytope.from_points(
                    [tuple(int(x) for x in p) for p in pts]
                )
            except (TypeError, ValueError) as e:
                raise UsageError(f"bad vertex list: {e}")
        try:
            return polytope_by_name(raw)
        except (KeyError, ValueError):
            raise UsageError(f"unknown polytope preset {raw!r}")
    raise UsageError(f"unknown parameter {key!r}")


def _parse_params(name: str, pairs) -> dict:
    exp = _REGISTRY[name]
    params = {}
    for item in pairs:
        key, sep, raw = item.partition("=")
        if not sep:
            raise UsageError(f"--param wants key=value, got {item!r}")
        if key not in exp.required:
            raise UsageError(f"experiment {name} takes no parameter {key!r}")
        params[key] = _parse_param_value(key, raw)
    for key in exp.required:
        if key not in params:
            raise UsageError(f"experiment {name} needs --param {key}=...")
    return dict(sorted(params.items()))


def _slug(name: str, params: dict) -> str:
    parts = [name]
    for key in sorted(params):
        value = params[key]
        if isinstance(value, LatticePolytope):
            for preset, maker in (
                ("segment", simplex(1)), ("triangle", simplex(2)),
                ("tetrahedron", simplex(3)), ("f2", f2_polytope()),
                ("f40", f40_polytope()),
            ):
                if value == maker:
                    parts.append(preset)
                    break
            else:
                digest = hashlib.sha256(
                    repr(value.vertices).encode("ascii")
                ).hexdigest()[:8]
                parts.append("p" + digest)
        else:
            parts.append(str(value))
    return "-".join(parts)


def run_experiment(spec: ExperimentSpec):
    """Run a registered experiment; returns (report, artifacts)."""
    if spec.name not in _REGISTRY:
        raise UsageError(f"unknown experiment {spec.name!r}")
    report, artifacts = _REGISTRY[spec.name].build(spec.parameters)
    return report, artifacts


def experiment_document(name: str, param_pairs=()):
    """Slug, canonical JSON text, artifacts and report for one experiment.

    This is the single source of the bytes that ``torquot run`` writes;
    the golden files and their stability tests go through it too.
    """
    if name not in _REGISTRY:
        raise UsageError(f"unknown experiment {name!r}")
    params = _parse_params(name, param_pairs)
    spec = ExperimentSpec(name, params, _REGISTRY[name].expected)
    report, artifacts = run_experiment(spec)
    slug = _slug(name, params)
    envelope = {
        "conventions": _CONVENTIONS,
        "experiment": slug,
        "parameters": params,
        "report": report,
    }
    return slug, serialize(envelope), artifacts, report


# --------------------------------------------------------------------------
# the two subcommands


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _cmd_run(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.svg and not args.out:
        raise UsageError("--svg needs --out to have somewhere to write")
    try:
        slug, text, artifacts, report = experiment_document(
            args.name, args.param
        )
    except UsageError:
        raise
    except ValueError as e:
        raise UsageError(str(e))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        _atomic_write(os.path.join(args.out, slug + ".json"), text)
        if args.svg:
            if "svg" in artifacts:
                _atomic_write(
                    os.path.join(args.out, slug + ".svg"), artifacts["svg"]
                )
            else:
                print(f"{slug}: no figure for this experiment",
                      file=sys.stderr)
    else:
        sys.stdout.write(text)
    print(f"{slug}: {report.verdict}", file=sys.stderr)
    return 0 if report.verdict == _REGISTRY[args.name].expected else 2


def _input_polytope(data):
    spec = data.get("polytope")
    if isinstance(spec, str):
        try:
            return polytope_by_name(spec)
        except KeyError:
            raise UsageError(f"unknown polytope preset {spec!r}")
    if isinstance(spec, (list, tuple)):
        try:
            return LatticePolytope.from_points(
                [tuple(int(x) for x in p) for p in spec]
            )
        except (TypeError, ValueError) as e:
            raise UsageError(f"bad polytope vertices: {e}")
    raise UsageError('input needs a "polytope" (preset name or vertex list)')


def _input_m(data) -> int:
    m = data.get("m")
    if not isinstance(m, int):
        raise UsageError('input needs an integer "m"')
    return m


def _cmd_compute(args) -> int:
    try:
        with open(args.input, "r", encoding="ascii") as fh:
            data = deserialize(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e.strerror}")
    except SerializeError as e:
        raise UsageError(str(e))
    if not isinstance(data, dict):
        raise UsageError("input file must hold a JSON object")
    try:
        if args.kind == "normal-fan":
            value = normal_fan(_input_polytope(data))
        elif args.kind == "quotient-fan":
            setup = build_setup(_input_polytope(data), _input_m(data))
            value = _quotient_fan(setup)
        elif args.kind == "r-fan":
            setup = build_setup(_input_polytope(data), _input_m(data))
            value = _family_fan(setup)
        elif args.kind == "subdivision":
            centers = data.get("centers")
            if not isinstance(centers, (list, tuple)) or not centers:
                raise UsageError('input needs a nonempty "centers" list')
            value = build_subdivision(_input_polytope(data), centers)
        else:  # check-reduced
            setup = build_setup(_input_polytope(data), _input_m(data))
            value = check_reduced_fibers(
                setup,
                mode=data.get("mode", "cones"),
                vector=data.get("vector"),
            )
    except UsageError:
        raise
    except ValueError as e:
        raise UsageError(str(e))
    text = serialize(value)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# --------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torquot",
        description="exact quotient and family fans of lattice polytopes",
        epilog=_HELP_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run", help="run a registered experiment",
        epilog=_HELP_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    run_p.add_argument("name", help="experiment name (see below)")
    run_p.add_argument("--param", action="append", default=[],
                       metavar="KEY=VALUE", help="experiment parameter")
    run_p.add_argument("--out", metavar="DIR",
                       help="write report (and figures) into this directory")
    run_p.add_argument("--svg", action="store_true",
                       help="also write the experiment's figure")
    run_p.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="parallelism hint; results are identical at any N")

    comp_p = sub.add_parser("compute", help="one-shot computation from JSON")
    comp_p.add_argument(
        "kind",
        choices=["normal-fan", "quotient-fan", "r-fan", "subdivision",
                 "check-reduced"],
    )
    comp_p.add_argument("--input", required=True, metavar="FILE",
                        help="JSON input (polytope, m, centers, ...)")
    comp_p.add_argument("--out", metavar="FILE",
                        help="write result here instead of stdout")
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 1
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_compute(args)
    except UsageError as e:
        print(f"torquot: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
