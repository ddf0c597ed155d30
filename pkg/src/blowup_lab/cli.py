"""Command-line front end: every library operation on plain text files.

Output is one `key=value` pair per line and is byte-identical for identical
inputs, flags, and seeds.  Booleans print as true/false, integers bare, and
floats with 12 fixed decimals (gradient-check deviations use scientific
notation so small magnitudes stay visible).  Exit codes: 0 success, 2 for
malformed arguments or input files, 3 for refused constructions and
exceeded budgets.

Grouped subcommands also accept a hyphenated spelling (`lagrangian-max`
is `lagrangian max`).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import io as formats
from .blowup import (
    BlowupSpec,
    blow_up_3graph,
    blow_up_graph,
    edge_density,
    fdf_construct,
    validate_augmentation,
)
from .core import (
    SimplexWeights,
    clique_number,
    contains_k34,
    has_directed_4cycle,
    is_kr1_free,
    is_union_closed,
    union_closure,
)
from .errors import ConstraintError, InputError
from .lagrangian import (
    graph_lagrangian,
    graph_lagrangian_max,
    lambda1,
    lambda2,
    lambda3,
    ms_reduce,
)
from .optimizer import (
    AscentConfig,
    GraphLagrangianObjective,
    GridResolution,
    Lambda1Objective,
    Lambda2Objective,
    Lambda3Objective,
    ascent_max,
    check_gradient,
    grid_max,
)
from .ucf import (
    ElementWeights,
    FamilyBlowupSpec,
    abundance,
    blowup_abundance_formula,
    blowup_equivalence_check,
    family_blowup,
    search_weighted,
    weighted_margin,
    weighted_witness,
)

Emit = Callable[[str, object], None]

# grouped subcommands that may be written with a hyphen instead of a space
_GROUPS = {
    "blowup": {"graph", "3graph", "family"},
    "fdf": {"build", "check-c4"},
    "check": {"k34", "kr1", "union-closed"},
    "lagrangian": {"eval", "max", "ms-reduce"},
    "lambda1": {"eval"},
    "lambda2": {"eval"},
    "lambda3": {"eval"},
    "opt": {"grid", "ascent", "grad-check"},
    "ucf": {
        "margin",
        "witness",
        "formula",
        "equivcheck",
        "search",
        "abundance",
    },
}


def _normalize(argv: list[str]) -> list[str]:
    if argv and not argv[0].startswith("-") and "-" in argv[0]:
        head, _, tail = argv[0].partition("-")
        if head in _GROUPS and tail in _GROUPS[head]:
            return [head, tail, *argv[1:]]
    return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 instead of SystemExit
        raise InputError(message)


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12f}"
    return str(value)


def _vector(values) -> str:
    return ",".join(f"{float(v):.12f}" for v in values)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _need(args: argparse.Namespace, attr: str, flag: str, what: str) -> str:
    value = getattr(args, attr, None)
    if value is None:
        raise InputError(f"{flag} is required ({what})")
    return value


def _load_graph(args, attr="input", flag="--input"):
    return formats.parse_graph(_read(_need(args, attr, flag, "graph file")))


def _load_3graph(args, attr="input", flag="--input"):
    return formats.parse_3graph(_read(_need(args, attr, flag, "3graph file")))


def _load_digraph(args, attr="digraph", flag="--digraph"):
    return formats.parse_digraph(_read(_need(args, attr, flag, "digraph file")))


def _load_wdigraph(args, attr="input", flag="--input"):
    return formats.parse_wdigraph(_read(_need(args, attr, flag, "wdigraph file")))


def _load_family(args):
    return formats.parse_family(_read(_need(args, "family", "--family", "family file")))


def _load_weights(args):
    return formats.parse_weights(
        _read(_need(args, "weights", "--weights", "weights file"))
    )


def _load_simplex(args) -> SimplexWeights:
    return SimplexWeights(tuple(float(v) for v in _load_weights(args)))


def _load_sizes(args) -> tuple[int, ...]:
    return formats.parse_sizes(_read(_need(args, "sizes", "--sizes", "sizes file")))


# ---------------------------------------------------------------------------
# handlers


def _cmd_blowup_graph(args, emit: Emit) -> None:
    blown, _ = blow_up_graph(_load_graph(args), BlowupSpec(_load_sizes(args)))
    emit("vertices", blown.n)
    emit("edges", blown.edge_count)
    if args.output:
        _write(args.output, formats.render_graph(blown))


def _cmd_blowup_3graph(args, emit: Emit) -> None:
    blown, _ = blow_up_3graph(
        _load_3graph(args),
        _load_digraph(args),
        BlowupSpec(_load_sizes(args)),
        force=args.force,
    )
    emit("vertices", blown.n)
    emit("triples", blown.triple_count)
    if args.output:
        _write(args.output, formats.render_3graph(blown))


def _cmd_blowup_family(args, emit: Emit) -> None:
    blown, _ = family_blowup(_load_family(args), FamilyBlowupSpec(_load_sizes(args)))
    emit("elements", blown.n)
    emit("sets", len(blown))
    if args.output:
        _write(args.output, formats.render_family(blown))


def _cmd_validate_augmentation(args, emit: Emit) -> None:
    violations = validate_augmentation(_load_3graph(args), _load_digraph(args))
    emit("violations", len(violations))
    for v in violations:
        emit("violation", f"{v.kind}:{','.join(map(str, v.vertices))}")


def _cmd_fdf_build(args, emit: Emit) -> None:
    built = fdf_construct(_load_digraph(args, "input", "--input"))
    emit("triples", built.triple_count)
    if args.check_k34:
        emit("k34", contains_k34(built))
    if args.density:
        emit("density", edge_density(built))
    if args.output:
        _write(args.output, formats.render_3graph(built))


def _cmd_fdf_check_c4(args, emit: Emit) -> None:
    emit("c4", has_directed_4cycle(_load_digraph(args, "input", "--input")))


def _cmd_check_k34(args, emit: Emit) -> None:
    emit("k34", contains_k34(_load_3graph(args)))


def _cmd_check_kr1(args, emit: Emit) -> None:
    if args.r is None:
        raise InputError("--r is required (forbidden clique order minus one)")
    emit("kr1_free", is_kr1_free(_load_graph(args), args.r))


def _cmd_check_union_closed(args, emit: Emit) -> None:
    emit("union_closed", is_union_closed(_load_family(args)))


def _cmd_closure(args, emit: Emit) -> None:
    closed = union_closure(_load_family(args))
    emit("sets", len(closed))
    if args.output:
        _write(args.output, formats.render_family(closed))


def _cmd_lagrangian_eval(args, emit: Emit) -> None:
    emit("value", graph_lagrangian(_load_graph(args), _load_simplex(args)))


def _cmd_lagrangian_max(args, emit: Emit) -> None:
    g = _load_graph(args)
    emit("omega", clique_number(g))
    emit("max", graph_lagrangian_max(g).value)


def _cmd_lagrangian_ms_reduce(args, emit: Emit) -> None:
    g = _load_graph(args)
    x = _load_simplex(args)
    trace = ms_reduce(g, x)
    emit("value_before", graph_lagrangian(g, x))
    emit("steps", len(trace.steps))
    for step in trace.steps:
        emit("step", f"{step.removed}:{step.absorber}:{step.value_after:.12f}")
    emit("value", graph_lagrangian(g, trace.weights))
    emit("support", ",".join(map(str, trace.support)))


def _cmd_lambda1_eval(args, emit: Emit) -> None:
    emit(
        "value",
        lambda1(_load_3graph(args), _load_digraph(args), _load_simplex(args)),
    )


def _cmd_lambda2_eval(args, emit: Emit) -> None:
    emit("value", lambda2(_load_wdigraph(args), _load_simplex(args)))


def _cmd_lambda3_eval(args, emit: Emit) -> None:
    emit("value", lambda3(_load_wdigraph(args), _load_simplex(args)))


def _objective(args):
    kind = args.objective
    if kind == "graph-lagrangian":
        return GraphLagrangianObjective(_load_graph(args))
    if kind == "lambda1":
        return Lambda1Objective(_load_3graph(args), _load_digraph(args))
    if kind == "lambda2":
        return Lambda2Objective(_load_wdigraph(args))
    return Lambda3Objective(_load_wdigraph(args))


def _cmd_opt_grid(args, emit: Emit) -> None:
    if args.resolution is None:
        raise InputError("--resolution is required (grid denominator)")
    result = grid_max(_objective(args), GridResolution(args.resolution))
    emit("value", result.value)
    emit("witness", _vector(result.witness.x))
    if args.output:
        _write(args.output, formats.render_weights([float(v) for v in result.witness.x]))


def _cmd_opt_ascent(args, emit: Emit) -> None:
    cfg = AscentConfig(
        restarts=args.restarts, max_iters=args.iters, tol=args.tol, seed=args.seed
    )
    result = ascent_max(_objective(args), cfg)
    emit("value", result.value)
    emit("witness", _vector(result.witness.x))
    if result.orientation is not None:
        for e in result.orientation.edges:
            emit("p", f"{e.u}:{e.v}:{e.forward:.12f}")
    if args.output:
        _write(args.output, formats.render_weights([float(v) for v in result.witness.x]))


def _cmd_opt_grad_check(args, emit: Emit) -> None:
    deviation = check_gradient(_objective(args), _load_simplex(args), args.step)
    print(f"deviation={deviation:.12e}", file=args._out)


def _cmd_ucf_margin(args, emit: Emit) -> None:
    if args.element is None:
        raise InputError("--element is required (ground element index)")
    f = _load_family(args)
    w = ElementWeights(tuple(_load_weights(args)))
    emit("margin", float(weighted_margin(f, w, args.element)))


def _cmd_ucf_witness(args, emit: Emit) -> None:
    wit = weighted_witness(_load_family(args), ElementWeights(tuple(_load_weights(args))))
    emit("element", wit.element)
    emit("margin", float(wit.margin))
    emit("margins", _vector(wit.margins))
    emit("counterexample", wit.is_counterexample)


def _cmd_ucf_formula(args, emit: Emit) -> None:
    if args.element is None:
        raise InputError("--element is required (ground element index)")
    count_in, count_out = blowup_abundance_formula(
        _load_family(args),
        FamilyBlowupSpec(_load_sizes(args)),
        args.element,
        args.position,
    )
    emit("count_in", count_in)
    emit("count_out", count_out)
    emit("margin", count_in - count_out)


def _cmd_ucf_equivcheck(args, emit: Emit) -> None:
    report = blowup_equivalence_check(
        _load_family(args), FamilyBlowupSpec(_load_sizes(args))
    )
    emit("ok", report.ok)
    emit("elements", len(report.per_element))
    emit("sets", len(report.blowup))
    for row in report.per_element:
        k = row.element
        emit(f"element{k}_margin", row.margin)
        emit(f"element{k}_in", row.explicit_in)
        emit(f"element{k}_out", row.explicit_out)
        emit(f"element{k}_consistent", row.consistent)


def _cmd_ucf_search(args, emit: Emit) -> None:
    if args.n is None:
        raise InputError("--n is required (ground set size)")
    report = search_weighted(args.n, args.trials, args.seed)
    emit("mode", report.mode)
    emit("families", report.families_checked)
    emit("degenerate", report.degenerate_skipped)
    emit("draws", report.weight_draws)
    emit("counterexamples", len(report.counterexamples))


def _cmd_ucf_abundance(args, emit: Emit) -> None:
    report = abundance(_load_family(args))
    emit("sets", report.family_size)
    for k, c in enumerate(report.counts):
        emit(f"count{k}", c)
    emit("abundant", ",".join(map(str, report.abundant)) if report.abundant else "-")
    emit("has_abundant", report.has_abundant)


# ---------------------------------------------------------------------------
# parser assembly


def _file_flags(sp: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        sp.add_argument(name, metavar="FILE")


def build_parser() -> _Parser:
    p = _Parser(prog="blowup-lab", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="command", metavar="command", required=True)

    def leaf(group, name: str, func, **kwargs) -> argparse.ArgumentParser:
        sp = group.add_parser(name, **kwargs)
        sp.set_defaults(func=func)
        return sp

    blowup = top.add_parser("blowup", help="blow up an instance along a size vector")
    bsub = blowup.add_subparsers(dest="subcommand", required=True)
    sp = leaf(bsub, "graph", _cmd_blowup_graph)
    _file_flags(sp, "--input", "--sizes", "--output")
    sp = leaf(bsub, "3graph", _cmd_blowup_3graph)
    _file_flags(sp, "--input", "--digraph", "--sizes", "--output")
    sp.add_argument("--force", action="store_true")
    sp = leaf(bsub, "family", _cmd_blowup_family)
    _file_flags(sp, "--family", "--sizes", "--output")

    sp = leaf(top, "validate-augmentation", _cmd_validate_augmentation)
    _file_flags(sp, "--input", "--digraph")

    fdf = top.add_parser("fdf", help="triples induced by an oriented graph")
    fsub = fdf.add_subparsers(dest="subcommand", required=True)
    sp = leaf(fsub, "build", _cmd_fdf_build)
    _file_flags(sp, "--input", "--output")
    sp.add_argument("--check-k34", dest="check_k34", action="store_true")
    sp.add_argument("--density", action="store_true")
    sp = leaf(fsub, "check-c4", _cmd_fdf_check_c4)
    _file_flags(sp, "--input")

    check = top.add_parser("check", help="decision oracles")
    csub = check.add_subparsers(dest="subcommand", required=True)
    sp = leaf(csub, "k34", _cmd_check_k34)
    _file_flags(sp, "--input")
    sp = leaf(csub, "kr1", _cmd_check_kr1)
    _file_flags(sp, "--input")
    sp.add_argument("--r", type=int)
    sp = leaf(csub, "union-closed", _cmd_check_union_closed)
    _file_flags(sp, "--family")

    lag = top.add_parser("lagrangian", help="graph edge polynomial")
    lsub = lag.add_subparsers(dest="subcommand", required=True)
    sp = leaf(lsub, "eval", _cmd_lagrangian_eval)
    _file_flags(sp, "--input", "--weights")
    sp = leaf(lsub, "max", _cmd_lagrangian_max)
    _file_flags(sp, "--input")
    sp = leaf(lsub, "ms-reduce", _cmd_lagrangian_ms_reduce)
    _file_flags(sp, "--input", "--weights")

    for name, func in (
        ("lambda1", _cmd_lambda1_eval),
        ("lambda2", _cmd_lambda2_eval),
        ("lambda3", _cmd_lambda3_eval),
    ):
        grp = top.add_parser(name, help=f"{name} objective")
        gsub = grp.add_subparsers(dest="subcommand", required=True)
        sp = leaf(gsub, "eval", func)
        if name == "lambda1":
            _file_flags(sp, "--input", "--digraph", "--weights")
        else:
            _file_flags(sp, "--input", "--weights")

    opt = top.add_parser("opt", help="simplex optimizers")
    osub = opt.add_subparsers(dest="subcommand", required=True)
    obj_choices = ("graph-lagrangian", "lambda1", "lambda2", "lambda3")
    sp = leaf(osub, "grid", _cmd_opt_grid)
    _file_flags(sp, "--input", "--digraph", "--output")
    sp.add_argument("--objective", choices=obj_choices, required=True)
    sp.add_argument("--resolution", type=int)
    sp = leaf(osub, "ascent", _cmd_opt_ascent)
    _file_flags(sp, "--input", "--digraph", "--output")
    sp.add_argument("--objective", choices=obj_choices, required=True)
    sp.add_argument("--restarts", type=int, default=64)
    sp.add_argument("--iters", type=int, default=10000)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--seed", type=int, default=0)
    sp = leaf(osub, "grad-check", _cmd_opt_grad_check)
    _file_flags(sp, "--input", "--digraph", "--weights")
    sp.add_argument("--objective", choices=obj_choices, required=True)
    sp.add_argument("--step", type=float, default=1e-5)

    ucf = top.add_parser("ucf", help="union-closed family operations")
    usub = ucf.add_subparsers(dest="subcommand", required=True)
    sp = leaf(usub, "margin", _cmd_ucf_margin)
    _file_flags(sp, "--family", "--weights")
    sp.add_argument("--element", type=int)
    sp = leaf(usub, "witness", _cmd_ucf_witness)
    _file_flags(sp, "--family", "--weights")
    sp = leaf(usub, "formula", _cmd_ucf_formula)
    _file_flags(sp, "--family", "--sizes")
    sp.add_argument("--element", type=int)
    sp.add_argument("--position", type=int, default=0)
    sp = leaf(usub, "equivcheck", _cmd_ucf_equivcheck)
    _file_flags(sp, "--family", "--sizes")
    sp = leaf(usub, "search", _cmd_ucf_search)
    sp.add_argument("--n", type=int)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp = leaf(usub, "abundance", _cmd_ucf_abundance)
    _file_flags(sp, "--family")

    sp = leaf(top, "closure", _cmd_closure)
    _file_flags(sp, "--family", "--output")

    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    """Parse argv, dispatch, and return the exit code (0, 2, or 3)."""
    stream = sys.stdout if out is None else out
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_normalize(raw))
        args._out = stream

        def emit(key: str, value: object) -> None:
            print(f"{key}={_fmt(value)}", file=stream)

        args.func(args, emit)
        return 0
    except SystemExit as exc:  # argparse --help
        return exc.code if isinstance(exc.code, int) else 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstraintError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
