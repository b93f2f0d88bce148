"""The dwm command: construct, verify, search, scheme and replay.

Exit codes: 0 when every check passes, 1 when a check fails or a search ends without a result, 2 for unusable
input (bad arguments, unparseable files, impossible parameters).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from apscheduler.schedulers.background import BackgroundScheduler

from disjoint_weighing import __version__
from disjoint_weighing.construct import DWCollection, PairFamily, PairKind
from disjoint_weighing.errors import BudgetExceeded, DWMError, GridParseError, ParamMismatch, SearchExhausted
from disjoint_weighing.gridfile import SignGrid, make_grid, read_grid, write_grid
from disjoint_weighing.manifest import RunManifest, hash_inputs, replay, write_manifest
from disjoint_weighing.registry import (
    CONSTRUCT_SPECS,
    build_dw,
    build_pairs,
    default_dw,
    dw_from_grid,
    load_dw,
    load_hadamard,
    parse_family_spec,
)
from disjoint_weighing.report import (
    render_certificates,
    render_eigenmatrices,
    render_intersection_matrix,
    render_tensor_json,
)
from disjoint_weighing.scheme import (
    SchemeParams,
    build_relations,
    check_product_formulas,
    check_split_identity,
    closed_form_L1,
    coclique_bound_check,
    count_intersection_numbers,
    intersection_tensor,
)
from disjoint_weighing.search import SearchBudget, SearchMonitor, SearchProblem, SearchResult, resume, search_dw_triple
from disjoint_weighing.settings import get_settings, resolve_threads
from disjoint_weighing.spectra import check_eigen_identities, closed_form_P, compare, eigenmatrices_from_L1, ratio_bound
from disjoint_weighing.verify import (
    Certificate,
    Check,
    certify_dw,
    check_pair_conditions,
    equality_check,
    is_hadamard,
    is_orthogonal_design,
)

logger: logging.Logger = logging.getLogger(__name__)

EXIT_PASS: int = 0
EXIT_FAIL: int = 1
EXIT_USAGE: int = 2

# Header flag -> the certify_dw check it claims.
_DW_FLAGS: tuple[tuple[str, str], ...] = (("skew", "skew"), ("complete", "complete_cover"))
_OPTIONAL_DW_CHECKS: frozenset[str] = frozenset(name for _, name in _DW_FLAGS)


def _output_dir(args: argparse.Namespace) -> Path:
    directory: Path = Path(args.out) if args.out else get_settings().output_dir / args.command
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def _finish(
    args: argparse.Namespace,
    argv: Sequence[str],
    directory: Path,
    started: float,
    inputs: Sequence[Path] = (),
    rng_seed: int | None = None,
) -> None:
    parameters: dict[str, object] = {key: value for key, value in vars(args).items() if key not in {"handler", "out"}}
    manifest = RunManifest(
        command=args.command,
        argv=tuple(argv),
        parameters=parameters,
        input_hashes=hash_inputs(inputs),
        version=__version__,
        rng_seed=rng_seed,
        wall_time=time.monotonic() - started,
    )
    write_manifest(directory, manifest)


def _exit_code(certificates: Sequence[Certificate]) -> int:
    return EXIT_PASS if all(certificate.passed for certificate in certificates) else EXIT_FAIL


def _dw_grid(collection: DWCollection, **header: object) -> SignGrid:
    return make_grid(
        collection.matrices,
        kind="dw",
        weights=collection.weights,
        skew=collection.certified.skew,
        complete=collection.certified.complete_cover,
        **header,
    )


def _split_certificates(collection: DWCollection) -> list[Certificate]:
    return [check_split_identity(W, w) for W, w in zip(collection.matrices, collection.weights, strict=True)]


def _pair_grid(family: PairFamily) -> SignGrid:
    blocks = [matrix for pair in family.pairs for matrix in pair]
    return make_grid(blocks, kind=family.kind.value, m=family.m, pairs=len(family.pairs))


def cmd_construct(args: argparse.Namespace, argv: Sequence[str]) -> int:
    """Build a named family and write it with its certificate."""
    started: float = time.monotonic()
    name, _ = parse_family_spec(args.spec)
    directory: Path = _output_dir(args)
    inputs: list[Path] = []
    certificates: list[Certificate] = []

    if name == "pairs":
        for family in build_pairs(args.spec):
            certificates.append(check_pair_conditions(family))
            if family.pairs:
                write_grid(directory / f"{family.kind.value.lower()}.grid", _pair_grid(family), as_json=False)
                if args.json:
                    write_grid(directory / f"{family.kind.value.lower()}.json", _pair_grid(family), as_json=True)
    else:
        base: DWCollection | None = None
        if args.base:
            inputs.append(Path(args.base))
            base = dw_from_grid(read_grid(Path(args.base)))
        collection: DWCollection = build_dw(args.spec, base)
        grid: SignGrid = _dw_grid(collection, family=name)
        write_grid(directory / f"{name}.grid", grid)
        if args.json:
            write_grid(directory / f"{name}.json", grid, as_json=True)
        certificates.append(collection.certificate)
        certificates.extend(_split_certificates(collection))
        print(f"{name}: DW({collection.order};{','.join(map(str, collection.weights))})")

    text: str = render_certificates(certificates)
    (directory / "certificate.txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    _finish(args, argv, directory, started, inputs)
    return _exit_code(certificates)


def _select(certificate: Certificate, names: Sequence[str]) -> Certificate:
    return Certificate(subject=certificate.subject, checks=tuple(c for c in certificate.checks if c.name in names))


def _unclaimed_dw_checks(grid: SignGrid) -> list[Check]:
    """Skew and complete-cover outcomes the header does not claim; reported, never failing the run."""
    matrices = list(grid.matrices)
    weights = grid.weights or tuple(int((matrix.entries[0] != 0).sum()) for matrix in matrices)
    claimed: set[str] = {name for flag, name in _DW_FLAGS if grid.flag(flag)}
    return [c for c in certify_dw(matrices, weights).checks if c.name in _OPTIONAL_DW_CHECKS - claimed]


def _render_unclaimed(checks: Sequence[Check]) -> str:
    lines: list[str] = []
    for check in checks:
        outcome: str = f"PASS {check.name}" if check.passed else f"FAIL {check.name} {check.witness}"
        lines.append(f"# not claimed: {outcome}\n")
    return "".join(lines)


def _verify_certificates(grid: SignGrid, expect: str) -> list[Certificate]:
    matrices = list(grid.matrices)
    match expect:
        case "dw":
            weights = grid.weights or tuple(int((matrix.entries[0] != 0).sum()) for matrix in matrices)
            names: list[str] = ["weighing", "disjoint"]
            names += [name for flag, name in _DW_FLAGS if grid.flag(flag)]
            return [_select(certify_dw(matrices, weights), names)]
        case "od":
            weights = grid.weights or tuple(int((matrix.entries[0] != 0).sum()) for matrix in matrices)
            return [is_orthogonal_design(matrices, weights)]
        case "hadamard":
            return [is_hadamard(matrix) for matrix in matrices]
        case "pairs":
            if grid.kind not in {"HK", "LM"}:
                msg: str = f"a pairs file needs kind=HK or kind=LM in its header, got {grid.kind!r}"
                raise ParamMismatch(msg)
            if len(matrices) % 2:
                msg = f"a pairs file alternates H and K blocks, got an odd count {len(matrices)}"
                raise ParamMismatch(msg)
            pairs = tuple(zip(matrices[0::2], matrices[1::2], strict=True))
            family = PairFamily(m=grid.order.bit_length() - 1, kind=PairKind(grid.kind), pairs=pairs)
            return [check_pair_conditions(family)]
    msg = f"unknown expectation {expect!r}"
    raise ParamMismatch(msg)


def cmd_verify(args: argparse.Namespace, argv: Sequence[str]) -> int:  # noqa: ARG001
    """Check a sign-grid file against an expected structure and print the report."""
    grid: SignGrid = read_grid(Path(args.file))
    certificates: list[Certificate] = _verify_certificates(grid, args.expect)
    sys.stdout.write(render_certificates(certificates))
    if args.expect == "dw":
        sys.stdout.write(_render_unclaimed(_unclaimed_dw_checks(grid)))
    return _exit_code(certificates)


def _write_search_result(directory: Path, problem: SearchProblem, result: SearchResult) -> list[Certificate]:
    seeds, stats, collection = result.seeds, result.stats, result.collection
    document: dict[str, object] = {
        "n": problem.n,
        "w": problem.w,
        "seeds": [{"a": seed.a, "b": seed.b, "c": seed.c, "d": seed.d} for seed in seeds],
        "nodes": stats.nodes,
        "prunes": dict(sorted(stats.prunes.items())),
        "depth_histogram": list(stats.depth_histogram),
        "symmetry": stats.symmetry,
    }
    (directory / "seeds.json").write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    write_grid(directory / "dw.grid", _dw_grid(collection, family="search", n=problem.n))
    return [collection.certificate, *_split_certificates(collection)]


def cmd_search(args: argparse.Namespace, argv: Sequence[str]) -> int:
    """Search for a skew DW(4n;[(4n-1)/3]^3) and write it, or a checkpoint when the budget runs out."""
    started: float = time.monotonic()
    settings = get_settings()
    budget = SearchBudget(
        node_limit=int(float(args.budget)) if args.budget is not None else settings.node_limit,
        time_limit=float(args.time_limit) if args.time_limit is not None else settings.time_limit,
    )
    problem = SearchProblem(
        n=args.n,
        budget=budget,
        rng_seed=args.seed,
        pruning=not args.no_pruning,
        symmetry=not args.no_symmetry,
    )
    threads: int = resolve_threads(args.threads)
    directory: Path = _output_dir(args)
    inputs: list[Path] = [Path(args.resume)] if args.resume else []

    monitor = SearchMonitor()
    scheduler: BackgroundScheduler = BackgroundScheduler()
    interval: float = args.progress_interval or settings.progress_interval
    scheduler.add_job(monitor.report, "interval", seconds=interval, args=[sys.stderr])
    scheduler.start()
    try:
        if args.resume:
            result = resume(Path(args.resume).read_bytes(), problem, monitor=monitor)
        else:
            result = search_dw_triple(problem, threads=threads, monitor=monitor)
    except BudgetExceeded as e:
        print(f"budget exceeded after {e.stats.nodes} nodes")
        if e.checkpoint is not None:
            target: Path = Path(args.checkpoint) if args.checkpoint else settings.checkpoint_dir / f"n{args.n}.ckpt"
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(e.checkpoint)
            logger.info("Wrote checkpoint to %s", target)
            print(f"checkpoint written to {target}")
        _finish(args, argv, directory, started, inputs, rng_seed=args.seed)
        return EXIT_FAIL
    except SearchExhausted as e:
        print(f"no triple exists for n={args.n}; explored {e.stats.nodes} nodes")
        _finish(args, argv, directory, started, inputs, rng_seed=args.seed)
        return EXIT_FAIL
    finally:
        scheduler.shutdown(wait=False)

    certificates: list[Certificate] = _write_search_result(directory, problem, result)
    text: str = render_certificates(certificates)
    (directory / "certificate.txt").write_text(text, encoding="utf-8")
    print(f"found DW({4 * problem.n};{problem.w},{problem.w},{problem.w}) after {result.stats.nodes} nodes")
    sys.stdout.write(text)
    _finish(args, argv, directory, started, inputs, rng_seed=args.seed)
    return _exit_code(certificates)


def _file_inputs(*sources: str) -> list[Path]:
    return [Path(source) for source in sources if Path(source).is_file()]


def cmd_scheme(args: argparse.Namespace, argv: Sequence[str]) -> int:
    """Build the association scheme for (k, m, l), certify it and write its parameters."""
    started: float = time.monotonic()
    k, m, ell = args.k, args.m, args.l
    dw_source: str | None = args.dw or default_dw(k, m)
    if dw_source is None:
        msg: str = f"no built-in skew DW(k*m+1;[m]^k) for k={k}, m={m}; pass one with --dw"
        raise ParamMismatch(msg)
    dw: DWCollection = load_dw(dw_source)
    hadamard = load_hadamard(args.hadamard, k * ell + 1)
    params = SchemeParams(k=k, m=m, ell=ell, dw=dw, hadamard=hadamard)
    directory: Path = _output_dir(args)

    rel = build_relations(params)
    certificates: list[Certificate] = [rel.certificate, check_product_formulas(rel)]
    certificates.extend(_split_certificates(dw))
    relations_grid: SignGrid = make_grid(rel.relations, kind="relations", classes=rel.d, k=k, m=m, l=ell)
    write_grid(directory / "relations.grid", relations_grid)
    if args.json:
        write_grid(directory / "relations.json", relations_grid, as_json=True)

    if rel.certificate.passed:
        tensor = intersection_tensor(rel)
        counted = count_intersection_numbers(rel)
        agree: Check = Check(name="counted_intersection_numbers", passed=True)
        for index in range(rel.d + 1):
            agree = equality_check(
                "counted_intersection_numbers", counted.matrix(index), tensor.matrix(index), (index,)
            )
            if not agree.passed:
                break
        L1 = tensor.matrix(1)
        tensor_checks: tuple[Check, ...] = (
            agree,
            equality_check("closed_form_L1", L1, closed_form_L1(k, m, ell)),
        )
        certificates.append(Certificate(subject=rel.certificate.subject, checks=tensor_checks))
        (directory / "tensor.json").write_text(render_tensor_json(tensor), encoding="utf-8")
        (directory / "L1.txt").write_text(render_intersection_matrix(L1, rel.d), encoding="utf-8")

        computed = eigenmatrices_from_L1(L1, rel)
        closed = closed_form_P(k, m, ell)
        certificates.append(compare(computed, closed))
        certificates.append(check_eigen_identities(computed, rel))
        certificates.append(coclique_bound_check(rel, ratio_bound(computed)))
        eigen_text: str = render_eigenmatrices(computed, "computed") + render_eigenmatrices(closed, "closed form")
        (directory / "eigenmatrices.txt").write_text(eigen_text, encoding="utf-8")

    text: str = render_certificates(certificates)
    (directory / "certificate.txt").write_text(text, encoding="utf-8")
    print(f"{rel.d}-class scheme on {rel.order} vertices (k={k}, m={m}, l={ell})")
    sys.stdout.write(text)
    _finish(args, argv, directory, started, _file_inputs(dw_source, args.hadamard))
    return _exit_code(certificates)


def cmd_replay(args: argparse.Namespace, argv: Sequence[str]) -> int:  # noqa: ARG001
    """Re-run the command recorded in a manifest."""
    return replay(Path(args.manifest), Path(args.out) if args.out else None, runner=main)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dwm", description="Disjoint weighing matrices and association schemes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    construct = subparsers.add_parser("construct", help="Build a named family.")
    construct.add_argument("spec", help=f"One of: {', '.join(CONSTRUCT_SPECS)}.")
    construct.add_argument("--base", help="Sign-grid file with the DW(40;[13]^3) base for f10.")
    construct.add_argument("--out", help="Output directory.")
    construct.add_argument("--json", action="store_true", help="Also write the JSON form of each grid.")
    construct.set_defaults(handler=cmd_construct)

    verify = subparsers.add_parser("verify", help="Check a sign-grid file.")
    verify.add_argument("file", help="Sign-grid or .json file.")
    verify.add_argument("--expect", choices=["dw", "od", "hadamard", "pairs"], default="dw")
    verify.set_defaults(handler=cmd_verify)

    search = subparsers.add_parser("search", help="Search for a skew DW(4n;[(4n-1)/3]^3).")
    search.add_argument("--n", type=int, required=True, help="Circulant order; odd with 3 dividing 4n-1.")
    search.add_argument("--budget", help="Node limit, e.g. 1e8.")
    search.add_argument("--time-limit", type=float, help="Wall-clock limit in seconds.")
    search.add_argument("--seed", type=int, default=0, help="Shuffle the first level; 0 keeps canonical order.")
    search.add_argument("--checkpoint", help="Where to write a checkpoint if the budget runs out.")
    search.add_argument("--resume", help="Continue from this checkpoint.")
    search.add_argument("--threads", type=int, help="Worker threads; DWM_THREADS overrides this.")
    search.add_argument("--no-pruning", action="store_true", help="Disable the Gram-based pruning rules.")
    search.add_argument("--no-symmetry", action="store_true", help="Disable symmetry reduction.")
    search.add_argument("--progress-interval", type=float, help="Seconds between progress lines on stderr.")
    search.add_argument("--out", help="Output directory.")
    search.set_defaults(handler=cmd_search)

    scheme = subparsers.add_parser("scheme", help="Build and certify the association scheme for (k, m, l).")
    scheme.add_argument("--k", type=int, required=True)
    scheme.add_argument("--m", type=int, required=True)
    scheme.add_argument("--l", type=int, required=True)
    scheme.add_argument("--dw", help="builtin:<spec> or a sign-grid file; defaults to a built-in DW when one fits.")
    scheme.add_argument("--hadamard", default="sylvester", help="sylvester, sylvester:N, paley:N or a file.")
    scheme.add_argument("--out", help="Output directory.")
    scheme.add_argument("--json", action="store_true", help="Also write the relations as JSON.")
    scheme.set_defaults(handler=cmd_scheme)

    replay_parser = subparsers.add_parser("replay", help="Re-run the command recorded in a manifest.toml.")
    replay_parser.add_argument("manifest")
    replay_parser.add_argument("--out", help="Write outputs here instead of the recorded directory.")
    replay_parser.set_defaults(handler=cmd_replay)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run dwm with the given arguments (sys.argv[1:] by default) and return the exit code."""
    arguments: list[str] = list(sys.argv[1:] if argv is None else argv)
    parser: argparse.ArgumentParser = build_parser()
    try:
        args: argparse.Namespace = parser.parse_args(arguments)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args, arguments)
    except GridParseError as e:
        print(f"{getattr(args, 'file', '')}:{e.line}:{e.column}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DWMError, OSError) as e:
        print(f"dwm {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
