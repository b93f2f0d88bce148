import io
import itertools

import pytest

from disjoint_weighing.construct import DW52_SEEDS, GSQuadSeed, gs_array
from disjoint_weighing.errors import BudgetExceeded, InvalidProblem, StaleCheckpoint
from disjoint_weighing.search import (
    LEVELS,
    SearchBudget,
    SearchMonitor,
    SearchProblem,
    SearchResult,
    autocorrelation_profile,
    checkpoint,
    enumerate_dw_triples,
    resume,
    search_dw_triple,
)
from disjoint_weighing.verify import certify_dw


def _brute_force_n1() -> set[tuple[GSQuadSeed, ...]]:
    """Every skew disjoint triple of order 4 with weight 1, by trying all 3^9 (b, c, d) assignments."""
    found: set[tuple[GSQuadSeed, ...]] = set()
    for values in itertools.product((-1, 0, 1), repeat=9):
        seeds = tuple(
            GSQuadSeed(a=(0,), b=(values[3 * i],), c=(values[3 * i + 1],), d=(values[3 * i + 2],)) for i in range(3)
        )
        matrices = [gs_array(seed) for seed in seeds]
        if certify_dw(matrices, [1, 1, 1]).passed:
            found.add(seeds)
    return found


def test_autocorrelation_profile() -> None:
    """Test the periodic autocorrelation of a short ternary row."""
    assert autocorrelation_profile((1, 0, -1)) == (2, -1, -1)


@pytest.mark.parametrize("n", [2, 3, 0])
def test_invalid_n(n: int) -> None:
    """Test that even n, or n with 3 not dividing 4n - 1, is refused."""
    with pytest.raises(InvalidProblem):
        SearchProblem(n=n)


def test_problem_weight() -> None:
    """Test w = (4n-1)/3."""
    assert SearchProblem(n=7).w == 9
    assert SearchProblem(n=13).w == 17


def test_raw_solutions_match_brute_force() -> None:
    """Test that the unreduced search finds exactly the brute-force solutions for n = 1."""
    problem = SearchProblem(n=1, symmetry=False)
    solutions = list(enumerate_dw_triples(problem))
    assert len(solutions) == 48
    assert set(solutions) == _brute_force_n1()


def test_symmetry_keeps_one_per_sign_class() -> None:
    """Test that symmetry reduction leaves the 6 sign-canonical solutions for n = 1."""
    solutions = list(enumerate_dw_triples(SearchProblem(n=1)))
    assert len(solutions) == 6
    for seeds in solutions:
        for seed in seeds:
            assert next(value for row in seed.rows for value in row if value) == 1


def test_pruning_does_not_change_the_answer() -> None:
    """Test that pruning only removes dead branches."""
    pruned = list(enumerate_dw_triples(SearchProblem(n=1)))
    unpruned = list(enumerate_dw_triples(SearchProblem(n=1, pruning=False)))
    assert pruned == unpruned


def test_search_n1_is_certified() -> None:
    """Test that the first solution for n = 1 is verified and matches the first enumerated one."""
    result: SearchResult = search_dw_triple(SearchProblem(n=1))
    assert result.collection.certified.complete
    assert result.seeds == next(enumerate_dw_triples(SearchProblem(n=1)))
    assert result.stats.solutions == 1


def test_search_n7_finds_a_triple() -> None:
    """Test that a DW(28;[9]^3) is found for n = 7."""
    result: SearchResult = search_dw_triple(SearchProblem(n=7))
    assert result.collection.order == 28
    assert result.collection.weights == (9, 9, 9)
    assert result.collection.certified.complete
    assert len(result.stats.depth_histogram) == LEVELS


def test_search_is_deterministic() -> None:
    """Test that two runs give the same triple and the same counters."""
    first = search_dw_triple(SearchProblem(n=1))
    second = search_dw_triple(SearchProblem(n=1))
    assert first.seeds == second.seeds
    assert first.stats.without_timing() == second.stats.without_timing()


def test_threads_find_the_sequential_answer() -> None:
    """Test that a threaded run returns the same first triple as a sequential one."""
    sequential = search_dw_triple(SearchProblem(n=1))
    threaded = search_dw_triple(SearchProblem(n=1), threads=4)
    assert threaded.seeds == sequential.seeds


def test_budget_exceeded_carries_checkpoint() -> None:
    """Test that running out of nodes raises with a checkpoint and the counters so far."""
    problem = SearchProblem(n=1, budget=SearchBudget(node_limit=3))
    with pytest.raises(BudgetExceeded) as excinfo:
        search_dw_triple(problem)
    assert excinfo.value.stats.nodes == 3
    assert excinfo.value.checkpoint is not None


def test_resume_matches_uninterrupted_run() -> None:
    """Test that an interrupted and resumed search ends exactly like an uninterrupted one."""
    uninterrupted = search_dw_triple(SearchProblem(n=1))
    blob: bytes | None = None
    try:
        search_dw_triple(SearchProblem(n=1, budget=SearchBudget(node_limit=5)))
    except BudgetExceeded as e:
        blob = e.checkpoint
    assert blob is not None

    resumed = resume(blob, SearchProblem(n=1))
    assert resumed.seeds == uninterrupted.seeds
    assert resumed.stats.without_timing() == uninterrupted.stats.without_timing()


def test_chained_resumes() -> None:
    """Test resuming several times in small steps."""
    uninterrupted = search_dw_triple(SearchProblem(n=1))
    blob: bytes = checkpoint(SearchProblem(n=1))
    for _ in range(100):
        try:
            result = resume(blob, SearchProblem(n=1, budget=SearchBudget(node_limit=2)))
        except BudgetExceeded as e:
            assert e.checkpoint is not None
            blob = e.checkpoint
        else:
            break
    assert result.seeds == uninterrupted.seeds
    assert result.stats.nodes == uninterrupted.stats.nodes


def test_stale_checkpoint() -> None:
    """Test that a checkpoint for another problem is refused."""
    blob: bytes = checkpoint(SearchProblem(n=1))
    with pytest.raises(StaleCheckpoint):
        resume(blob, SearchProblem(n=1, pruning=False))


def test_fresh_checkpoint_runs_the_full_search() -> None:
    """Test that a checkpoint with no progress behaves like a new search."""
    result = resume(checkpoint(SearchProblem(n=1)), SearchProblem(n=1))
    assert result.seeds == search_dw_triple(SearchProblem(n=1)).seeds


def test_hint_is_validated() -> None:
    """Test that the built-in order-52 seeds validate as a hint for n = 13."""
    result = search_dw_triple(SearchProblem(n=13, hint=DW52_SEEDS))
    assert result.seeds == DW52_SEEDS
    assert result.stats.nodes == 0
    assert result.collection.certified.complete


def test_bad_hint() -> None:
    """Test that a hint that is not a DW triple is refused."""
    zero = GSQuadSeed(a=(0,), b=(0,), c=(0,), d=(0,))
    with pytest.raises(InvalidProblem):
        search_dw_triple(SearchProblem(n=1, hint=(zero, zero, zero)))


def test_monitor_reports_progress() -> None:
    """Test the progress line written by the monitor."""
    monitor = SearchMonitor()
    search_dw_triple(SearchProblem(n=1), monitor=monitor)
    stream = io.StringIO()
    monitor.report(stream)
    line: str = stream.getvalue()
    assert line.startswith("progress nodes=")
    assert "depth=[" in line
    assert monitor.snapshot().nodes > 0


_RANK: dict[int, int] = {0: 0, 1: 1, -1: 2}


def _signed(row: tuple[int, ...]) -> tuple[int, ...]:
    first: int = next((value for value in row if value), 1)
    return row if first > 0 else tuple(-value for value in row)


def _rotated(row: tuple[int, ...], shift: int) -> tuple[int, ...]:
    return tuple(row[(j - shift) % len(row)] for j in range(len(row)))


def _canonical(seeds: tuple[GSQuadSeed, ...]) -> tuple[GSQuadSeed, ...]:
    """Least triple in the orbit under per-row signs and a common rotation of each of b, c and d."""
    rows: list[list[tuple[int, ...]]] = [[_signed(row) for row in seed.rows] for seed in seeds]
    n: int = seeds[0].n
    for kind in (1, 2, 3):

        def key(shift: int, kind: int = kind) -> tuple[tuple[int, ...], ...]:
            return tuple(tuple(_RANK[v] for v in _signed(_rotated(quad[kind], shift))) for quad in rows)

        best: int = min(range(n), key=key)
        for quad in rows:
            quad[kind] = _signed(_rotated(quad[kind], best))
    return tuple(GSQuadSeed(*quad) for quad in rows)


def _transformed(seeds: tuple[GSQuadSeed, ...], shifts: tuple[int, int, int]) -> tuple[GSQuadSeed, ...]:
    """Rotate b, c and d by the given shifts in every matrix and negate the b row of the middle matrix."""
    out: list[GSQuadSeed] = []
    for index, seed in enumerate(seeds):
        b, c, d = (_rotated(row, shift) for row, shift in zip(seed.rows[1:], shifts, strict=True))
        if index == 1:
            b = tuple(-value for value in b)
        out.append(GSQuadSeed(a=seed.a, b=b, c=c, d=d))
    return tuple(out)


def test_pruned_n7_enumeration_reaches_a_solution() -> None:
    """Test that the pruned enumeration for n = 7 gets through the second matrix to a verified triple."""
    seeds = next(enumerate_dw_triples(SearchProblem(n=7)))
    assert certify_dw([gs_array(seed) for seed in seeds], [9, 9, 9]).passed


def test_symmetry_reduced_n7_keeps_the_orbit_representative() -> None:
    """Test that the orbit representative of an unreduced n = 7 triple is found by the reduced search."""
    raw = next(enumerate_dw_triples(SearchProblem(n=7, symmetry=False)))
    representative = _canonical(raw)
    assert representative in itertools.islice(enumerate_dw_triples(SearchProblem(n=7)), 50)


@pytest.mark.parametrize("shifts", [(1, 0, 0), (0, 3, 5), (6, 2, 4)])
def test_rotated_triples_share_a_representative(shifts: tuple[int, int, int]) -> None:
    """Test that rotations and sign changes map a triple to another triple with the same representative."""
    first = next(enumerate_dw_triples(SearchProblem(n=7)))
    moved = _transformed(first, shifts)
    assert certify_dw([gs_array(seed) for seed in moved], [9, 9, 9]).passed
    assert _canonical(moved) == _canonical(first)


def test_reduced_n7_solutions_are_representatives() -> None:
    """Test that the reduced search only yields triples that are least in their orbit."""
    for seeds in itertools.islice(enumerate_dw_triples(SearchProblem(n=7)), 5):
        assert _canonical(seeds) == seeds


def test_threaded_budget_exceeded_resumes() -> None:
    """Test that a threaded run out of budget leaves a checkpoint a sequential resume finishes."""
    problem = SearchProblem(n=7, budget=SearchBudget(node_limit=LEVELS - 2))
    with pytest.raises(BudgetExceeded) as excinfo:
        search_dw_triple(problem, threads=4)
    blob: bytes | None = excinfo.value.checkpoint
    assert blob is not None
    resumed = resume(blob, SearchProblem(n=7))
    assert resumed.seeds == search_dw_triple(SearchProblem(n=7)).seeds
