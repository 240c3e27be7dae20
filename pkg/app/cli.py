"""Command-line front end.

Grammar:
    type    "<family><rank>~<twist>[dag]", e.g. A3~1, C2~1, A4~2, A4~2dag, D3~2
    tensor  factors "r,s" separated by spaces, listed left to right as in
            B = B^{r_L,s_L} (x) ... (x) B^{r_1,s_1}; energies count positions
            from the right, so the last factor on the command line is B_1
    weight  classical coefficients "a1,...,an" of lambda = sum a_i Lambda_i

Exit codes: 0 success, 2 usage or parse error, 1 any other error, and for
`verify` the number of failing cases capped at 125.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from app.kr.crystals import generate_graph, restricted_paths, tensor_crystal
from app.kr.energy import x_polynomial
from app.kr.errors import InvalidTypeError, KRError, ParseError
from app.kr.export import graph_dot, graph_out, polynomial_out, tree_dot, tree_out
from app.kr.fermionic import configurations, m_polynomial
from app.kr.kleber import kleber_tree
from app.kr.root_data import Weight, parse_type, parse_weight
from app.kr.tensor_spec import TensorSpec
from app.kr.virtual_kleber import virtual_kleber_tree
from app.schemas import SCHEMAS, JobSpec, KleberTreeOut, MResult, XResult
from app.settings import configure_logging, get_settings
from app.trace import get_tracer
from app.verify import exit_code, load_budget, run_verification

logger = logging.getLogger(__name__)

_DEFAULT_FORMAT = {"m": "text", "x": "text", "tree": "dot", "vtree": "dot", "crystal": "dot", "verify": "json"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kr", description="Fermionic formulas, KR crystals and X = M checks.")
    parser.add_argument("--log-level", default=None, help="overrides KR_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    def job_parser(name: str, help_text: str, weight: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--type", required=True, dest="type_name", help="affine type, e.g. C2~1")
        p.add_argument("--tensor", required=True, nargs="+", help="factors r,s left to right")
        if weight:
            p.add_argument("--weight", required=True, help="a1,...,an")
        p.add_argument("--format", choices=["json", "dot", "text"], default=None)
        p.add_argument("--graph-cap", type=int, default=None)
        return p

    job_parser("m", "fermionic formula M(B, lambda; q)", weight=True)
    job_parser("x", "one-dimensional sum X(B, lambda; q)", weight=True)
    for name, help_text in (("tree", "Kleber tree of a simply-laced type"),
                            ("vtree", "virtual Kleber tree with selected nodes")):
        p = job_parser(name, help_text)
        p.add_argument("--weight-filter", default="all",
                       help="'all' or a weight a1,...,an; prunes the tree towards that weight")
        if name == "vtree":
            p.add_argument("--untrimmed", action="store_true", help="keep branches without selected nodes")
    job_parser("crystal", "crystal graph of a tensor product of B^{r,s}")

    verify = sub.add_parser("verify", help="run a verification budget")
    verify.add_argument("--budget", default="default", help="built-in name (default, quick, smoke) or a JSON file")
    verify.add_argument("--workers", type=int, default=None)
    verify.add_argument("--output", default=None, help="write the report here instead of stdout")

    schema = sub.add_parser("schema", help="print the JSON schema of an input or output document")
    schema.add_argument("name", choices=sorted(SCHEMAS))
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    spec = TensorSpec.parse(args.tensor)
    t = parse_type(args.type_name)
    weight = getattr(args, "weight", None)
    if getattr(args, "weight_filter", "all") != "all":
        weight = args.weight_filter
    return JobSpec(
        command=args.command,
        type=t.label,
        tensor=list(spec.factors),
        weight=None if weight is None else list(parse_weight(weight, t.n).coeffs),
        format=args.format or _DEFAULT_FORMAT[args.command],
        graph_cap=args.graph_cap or get_settings().graph_cap,
    )


def _weight(job: JobSpec) -> Optional[Weight]:
    return None if job.weight is None else Weight(tuple(job.weight))


def cmd_m(job: JobSpec) -> str:
    t, spec, lam = parse_type(job.type), job.tensor_spec(), _weight(job)
    with get_tracer().run("m", metadata=job.model_dump()) as run:
        with run.step("configurations", params={"type": t.label}) as step:
            nus = sorted(configurations(t, spec, lam), key=lambda c: c.partitions)
            step.set_output({"configurations": len(nus)})
        with run.step("fermionic_sum") as step:
            poly = m_polynomial(t, spec, lam)
            step.set_output({"polynomial": str(poly)})
    if job.format == "json":
        result = MResult(type=t.label, tensor=job.tensor, weight=job.weight,
                         polynomial=polynomial_out(poly),
                         configurations=[str(nu.partitions) for nu in nus])
        return result.model_dump_json(indent=2)
    return f"{poly}\nconfigurations: {len(nus)}"


def cmd_x(job: JobSpec) -> str:
    t, spec, lam = parse_type(job.type), job.tensor_spec(), _weight(job)
    crystal = tensor_crystal(t, spec.factors)
    with get_tracer().run("x", metadata=job.model_dump()) as run:
        with run.step("one_dimensional_sum", params={"factors": len(spec.factors)}) as step:
            poly = x_polynomial(crystal.factors, lam, job.graph_cap)
            step.set_output({"polynomial": str(poly)})
    if job.format == "json":
        paths = [crystal.label(b) for b in restricted_paths(crystal, lam, job.graph_cap)]
        result = XResult(type=t.label, tensor=job.tensor, weight=job.weight,
                         polynomial=polynomial_out(poly), paths=paths)
        return result.model_dump_json(indent=2)
    return str(poly)


def _tree_text(out: KleberTreeOut) -> str:
    lines = [f"{out.type} in {out.ambient_type}: {len(out.nodes)} nodes"]
    for node in out.nodes:
        flags = "" if not out.virtual else (" selected" if node.selected else "") + (
            " superlattice" if node.superlattice else "")
        lines.append(f"{'  ' * node.depth}{node.id}: {node.weight} {node.config}{flags}")
    return "\n".join(lines)


def _render_tree(out: KleberTreeOut, fmt: str) -> str:
    if fmt == "json":
        return out.model_dump_json(indent=2)
    if fmt == "dot":
        return tree_dot(out)
    return _tree_text(out)


def cmd_tree(job: JobSpec) -> str:
    t, spec = parse_type(job.type), job.tensor_spec()
    with get_tracer().run("tree", metadata=job.model_dump()):
        tree = kleber_tree(t, spec, _weight(job))
    return _render_tree(tree_out(tree, t, spec, virtual=False), job.format)


def cmd_vtree(job: JobSpec, trim: bool = True) -> str:
    x, spec = parse_type(job.type), job.tensor_spec()
    with get_tracer().run("vtree", metadata=job.model_dump()):
        tree = virtual_kleber_tree(x, spec, _weight(job), trim=trim)
    return _render_tree(tree_out(tree, x, spec, virtual=True), job.format)


def cmd_crystal(job: JobSpec) -> str:
    t, spec = parse_type(job.type), job.tensor_spec()
    crystal = tensor_crystal(t, spec.factors)
    target = crystal if len(crystal.factors) > 1 else crystal.factors[0]
    with get_tracer().run("crystal", metadata=job.model_dump()) as run:
        with run.step("generate_graph", params={"cap": job.graph_cap}) as step:
            graph = generate_graph(target, job.graph_cap)
            step.set_output({"elements": len(graph)})
    out = graph_out(graph, t, spec)
    if job.format == "json":
        return out.model_dump_json(indent=2)
    if job.format == "dot":
        return graph_dot(out)
    return "\n".join([f"{len(out.vertices)} elements, {len(out.arcs)} arcs"] +
                     [f"{arc.source} -{arc.index}-> {arc.target}" for arc in out.arcs])


def cmd_verify(args: argparse.Namespace) -> int:
    budget = load_budget(args.budget)
    workers = args.workers or get_settings().workers
    report = run_verification(budget, workers=workers)
    text = report.model_dump_json(indent=2)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    if report.failures:
        logger.warning("%d of %d verification cases failed", report.failures, report.total)
    return exit_code(report)


def cmd_schema(name: str) -> str:
    return json.dumps(SCHEMAS[name].model_json_schema(), indent=2, sort_keys=True)


_COMMANDS = {"m": cmd_m, "x": cmd_x, "tree": cmd_tree, "crystal": cmd_crystal}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "schema":
            print(cmd_schema(args.name))
            return 0
        job = job_from_args(args)
        if args.command == "vtree":
            output = cmd_vtree(job, trim=not args.untrimmed)
        else:
            output = _COMMANDS[args.command](job)
    except (ParseError, InvalidTypeError) as e:
        parser.error(str(e))
    except KRError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    print(output)
    return 0


__all__ = ["build_parser", "job_from_args", "main"]
