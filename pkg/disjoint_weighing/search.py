"""Exhaustive search for skew disjoint weighing triples built from Goethals-Seidel seeds.

The search fixes twelve first-row vectors, matrix by matrix: (a1, b1, c1, d1), (a2, ..., d2), (a3, ..., d3).
Candidates at each level are whole ternary vectors in lexicographic order with value order 0, +1, -1. The
search stack is explicit, so an interrupted run can be written to a checkpoint and resumed exactly.

Pruning rules (each counted separately in the stats):
    skew_a    a-vectors must be skew.
    disjoint  supports of the same kind must not overlap, and the last matrix fills what is left.
    weight    a matrix's vectors have w non-zero entries in total.
    gram      the periodic autocorrelations of a quad must cancel; d is looked up from the other three.

Symmetry (independent of pruning): every vector has its first non-zero entry +1, and each of the b, c and d
triples is the least of its cyclic rotations.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import random
import threading
import time
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, TextIO

from disjoint_weighing import settings
from disjoint_weighing.checkpoint import SearchState, dump_checkpoint, load_checkpoint
from disjoint_weighing.construct import DWCollection, GSQuadSeed, certify_collection, gs_assemble
from disjoint_weighing.errors import BudgetExceeded, DWMError, InvalidProblem, SearchExhausted, UncertifiedInput

if TYPE_CHECKING:
    from collections.abc import Sequence

logger: logging.Logger = logging.getLogger(__name__)

VALUE_ORDER: tuple[int, int, int] = (0, 1, -1)
_RANK: dict[int, int] = {0: 0, 1: 1, -1: 2}
KINDS: str = "abcd"
MATRICES: int = 3
LEVELS: int = MATRICES * len(KINDS)
PRUNE_RULES: tuple[str, ...] = ("skew_a", "disjoint", "weight", "gram", "symmetry")

# How often the wall clock is read, in nodes.
_CLOCK_EVERY: int = 1024


def autocorrelation_profile(row: Sequence[int]) -> tuple[int, ...]:
    """Periodic autocorrelation: entry s is Σ_j row[j]·row[(j+s) mod n], for s = 0..n-1."""
    n: int = len(row)
    return tuple(sum(row[j] * row[(j + s) % n] for j in range(n)) for s in range(n))


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = settings.default_node_limit
    time_limit: float = settings.default_time_limit


@dataclass(frozen=True)
class SearchProblem:
    """A request for three disjoint skew W(4n, (4n-1)/3) covering J - I.

    Changing the budget does not change the problem, so a checkpoint may be resumed with a larger budget.
    """

    n: int
    budget: SearchBudget = field(default_factory=SearchBudget)
    rng_seed: int = 0
    pruning: bool = True
    symmetry: bool = True
    hint: tuple[GSQuadSeed, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.n % 2 == 0:
            msg: str = f"n must be a positive odd integer, got {self.n}"
            raise InvalidProblem(msg)
        if (4 * self.n - 1) % 3 != 0:
            msg = f"(4n-1)/3 must be an integer, got n={self.n}"
            raise InvalidProblem(msg)
        if self.budget.node_limit < 1 or self.budget.time_limit <= 0:
            msg = f"budget must be positive, got {self.budget}"
            raise InvalidProblem(msg)
        if self.hint is not None and (len(self.hint) != MATRICES or any(seed.n != self.n for seed in self.hint)):
            msg = f"hint must be three seeds of order {self.n}"
            raise InvalidProblem(msg)

    @property
    def w(self) -> int:
        return (4 * self.n - 1) // 3

    @property
    def constraints(self) -> dict[str, bool]:
        return {"skew_a": True, "disjoint": True, "complete_cover": True}

    def problem_hash(self) -> bytes:
        canonical: str = json.dumps(
            {"n": self.n, "w": self.w, "rng_seed": self.rng_seed, "pruning": self.pruning, "symmetry": self.symmetry},
            sort_keys=True,
        )
        return hashlib.sha256(canonical.encode()).digest()


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    elapsed: float
    prunes: dict[str, int]
    depth_histogram: tuple[int, ...]
    symmetry: str
    solutions: int = 0

    def without_timing(self) -> tuple:
        """Everything except the wall time, for reproducibility comparisons."""
        return (self.nodes, tuple(sorted(self.prunes.items())), self.depth_histogram, self.symmetry, self.solutions)


@dataclass(frozen=True)
class SearchResult:
    seeds: tuple[GSQuadSeed, ...]
    stats: SearchStats
    collection: DWCollection = field(repr=False, compare=False)


@dataclass(frozen=True)
class _Vector:
    values: tuple[int, ...]
    mask: int
    weight: int
    paf: tuple[int, ...]
    rank: tuple[int, ...]
    sign_canonical: bool
    skew: bool


def _rank(values: Sequence[int]) -> tuple[int, ...]:
    return tuple(_RANK[v] for v in values)


def _sign_canonical(values: tuple[int, ...]) -> tuple[int, ...]:
    for value in values:
        if value:
            return values if value > 0 else tuple(-v for v in values)
    return values


class _VectorTable:
    """Ternary vectors of length n, generated on demand by support."""

    def __init__(self, n: int) -> None:
        self.n: int = n
        self.shifts: int = (n - 1) // 2
        self.full: int = (1 << n) - 1
        self._by_support: dict[tuple[int, bool], list[_Vector]] = {}
        self._rotation_rank: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._lock = threading.Lock()

    def make(self, values: tuple[int, ...]) -> _Vector:
        n: int = self.n
        return _Vector(
            values=values,
            mask=sum(1 << j for j, v in enumerate(values) if v),
            weight=sum(1 for v in values if v),
            paf=tuple(sum(values[j] * values[(j + s) % n] for j in range(n)) for s in range(1, self.shifts + 1)),
            rank=_rank(values),
            sign_canonical=_sign_canonical(values) == values,
            skew=values[0] == 0 and all(values[j] == -values[n - j] for j in range(1, n)),
        )

    def with_support(self, mask: int, *, exact: bool) -> list[_Vector]:
        """Vectors whose support is inside mask (or equal to it), in canonical order."""
        key: tuple[int, bool] = (mask, exact)
        with self._lock:
            cached: list[_Vector] | None = self._by_support.get(key)
        if cached is not None:
            return cached

        choices: list[tuple[int, ...]] = []
        for j in range(self.n):
            if not mask >> j & 1:
                choices.append((0,))
            elif exact:
                choices.append((1, -1))
            else:
                choices.append(VALUE_ORDER)
        vectors: list[_Vector] = [self.make(values) for values in itertools.product(*choices)]
        with self._lock:
            self._by_support[key] = vectors
        return vectors

    def rotated_rank(self, vector: _Vector, shift: int) -> tuple[int, ...]:
        """Rank of the sign-canonical form of the vector rotated right by shift."""
        key: tuple[tuple[int, ...], int] = (vector.values, shift)
        cached: tuple[int, ...] | None = self._rotation_rank.get(key)
        if cached is None:
            n: int = self.n
            rotated: tuple[int, ...] = tuple(vector.values[(j - shift) % n] for j in range(n))
            cached = _rank(_sign_canonical(rotated))
            self._rotation_rank[key] = cached
        return cached

    def rotation_minimal(self, vector: _Vector) -> bool:
        return all(self.rotated_rank(vector, shift) >= vector.rank for shift in range(1, self.n))

    def pair_count(self, mask: int, shift: int) -> int:
        """Number of positions j with j and j+shift both in mask."""
        n: int = self.n
        rotated: int = ((mask << shift) | (mask >> (n - shift))) & self.full
        return (mask & rotated).bit_count()


@dataclass
class _Frame:
    level: int
    candidates: list[_Vector]
    pos: int = 0


@dataclass
class _Counters:
    nodes: int = 0
    prunes: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PRUNE_RULES, 0))
    depth_histogram: list[int] = field(default_factory=lambda: [0] * LEVELS)
    solutions: int = 0

    def snapshot(self, elapsed: float, symmetry: str) -> SearchStats:
        return SearchStats(
            nodes=self.nodes,
            elapsed=elapsed,
            prunes=dict(self.prunes),
            depth_histogram=tuple(self.depth_histogram),
            symmetry=symmetry,
            solutions=self.solutions,
        )

    def absorb(self, other: _Counters) -> None:
        self.nodes += other.nodes
        for rule, count in other.prunes.items():
            self.prunes[rule] = self.prunes.get(rule, 0) + count
        self.depth_histogram = [a + b for a, b in zip(self.depth_histogram, other.depth_histogram, strict=True)]
        self.solutions += other.solutions


class _Budget:
    """Node and wall-clock allowance shared by every walker of one run."""

    def __init__(self, budget: SearchBudget) -> None:
        self.node_limit: int = budget.node_limit
        self.deadline: float = time.monotonic() + budget.time_limit
        self.used: int = 0
        self.best_unit: int | None = None
        self._lock = threading.Lock()

    def charge(self) -> bool:
        with self._lock:
            if self.used >= self.node_limit:
                return False
            self.used += 1
            if self.used % _CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
                self.used = self.node_limit
                return False
            return True

    def found(self, unit: int) -> None:
        with self._lock:
            if self.best_unit is None or unit < self.best_unit:
                self.best_unit = unit

    def superseded(self, unit: int) -> bool:
        best: int | None = self.best_unit
        return best is not None and best < unit


class _OutOfBudget(Exception):  # noqa: N818
    pass


class SearchMonitor:
    """Live view of a running search, polled by the progress reporter."""

    def __init__(self) -> None:
        self._counters: list[_Counters] = []
        self._started: float = time.monotonic()
        self._symmetry: str = ""

    def attach(self, counters: _Counters, symmetry: str) -> None:
        self._counters.append(counters)
        self._symmetry = symmetry

    def snapshot(self) -> SearchStats:
        combined = _Counters()
        for counters in list(self._counters):
            combined.absorb(counters)
        return combined.snapshot(time.monotonic() - self._started, self._symmetry)

    def report(self, stream: TextIO) -> None:
        stats: SearchStats = self.snapshot()
        rate: float = stats.nodes / stats.elapsed if stats.elapsed > 0 else 0.0
        depth: str = " ".join(str(count) for count in stats.depth_histogram)
        stream.write(f"progress nodes={stats.nodes} rate={rate:.0f}/s depth=[{depth}]\n")
        stream.flush()


class _Walker:
    """Depth-first walk over the twelve vector levels with an explicit stack."""

    def __init__(self, problem: SearchProblem, table: _VectorTable, budget: _Budget, unit: int | None = None) -> None:
        self.problem: SearchProblem = problem
        self.table: _VectorTable = table
        self.budget: _Budget = budget
        self.unit: int | None = unit
        self.counters = _Counters()
        self.frames: list[_Frame] = []
        self.chosen: list[_Vector] = []
        self._static: dict[tuple, tuple[list[_Vector], dict[str, int]]] = {}
        self._index: dict[tuple, dict[tuple[int, tuple[int, ...]], list[_Vector]]] = {}
        full: int = table.full
        self.full_masks: tuple[int, ...] = (full & ~1, full, full, full)
        self.total_vectors: int = 3**table.n

    @property
    def symmetry_label(self) -> str:
        return "sign,rotation(b,c,d)" if self.problem.symmetry else "none"

    # Context of a level, derived from the vectors chosen before it.

    def _used(self, kind: int, matrices: int) -> int:
        used: int = 0
        for i in range(matrices):
            used |= self.chosen[4 * i + kind].mask
        return used

    def _free(self, kind: int, matrix: int) -> int:
        return self.full_masks[kind] & ~self._used(kind, matrix)

    # Candidate generation.

    def _static_candidates(self, level: int) -> tuple[list[_Vector], dict[str, int]]:
        matrix, kind = divmod(level, 4)
        problem: SearchProblem = self.problem
        if problem.pruning:
            free: int = self._free(kind, matrix)
            exact: bool = matrix == MATRICES - 1
        else:
            free, exact = self.table.full, False
        key: tuple = (kind, free, exact, matrix == 0)
        cached = self._static.get(key)
        if cached is not None:
            return cached

        prunes: dict[str, int] = dict.fromkeys(PRUNE_RULES, 0)
        vectors: list[_Vector] = self.table.with_support(free, exact=exact)
        prunes["disjoint"] = self.total_vectors - len(vectors)
        kept: list[_Vector] = []
        for vector in vectors:
            if problem.pruning and kind == 0 and not vector.skew:
                prunes["skew_a"] += 1
            elif problem.symmetry and not vector.sign_canonical:
                prunes["symmetry"] += 1
            elif problem.symmetry and kind != 0 and matrix == 0 and not self.table.rotation_minimal(vector):
                prunes["symmetry"] += 1
            else:
                kept.append(vector)
        self._static[key] = (kept, prunes)
        return kept, prunes

    def _stabilizer(self, kind: int, matrix: int) -> list[int]:
        """Rotations fixing every earlier vector of this kind, up to sign."""
        shifts: list[int] = list(range(1, self.table.n))
        for i in range(matrix):
            earlier: _Vector = self.chosen[4 * i + kind]
            shifts = [s for s in shifts if self.table.rotated_rank(earlier, s) == earlier.rank]
        return shifts

    def _capacity_after(self, kind: int, matrix: int) -> int:
        return sum(self._free(later, matrix).bit_count() for later in range(kind + 1, len(KINDS)))

    def _last_matrix_parity_ok(self, d_vector: _Vector) -> bool:
        """With the second matrix complete the last matrix's supports are forced; check weight and PAF parity."""
        masks: list[int] = [self._free(kind, MATRICES - 1) for kind in range(3)]
        masks.append(self.full_masks[3] & ~(self._used(3, MATRICES - 2) | d_vector.mask))
        if sum(mask.bit_count() for mask in masks) != self.problem.w:
            return False
        return all(
            sum(self.table.pair_count(mask, s) for mask in masks) % 2 == 0 for s in range(1, self.table.shifts + 1)
        )

    def _d_index(self, key: tuple, static: list[_Vector]) -> dict[tuple[int, tuple[int, ...]], list[_Vector]]:
        index = self._index.get(key)
        if index is None:
            index = {}
            for vector in static:
                index.setdefault((vector.weight, vector.paf), []).append(vector)
            self._index[key] = index
        return index

    def generate(self, level: int, *, count: bool) -> list[_Vector]:
        """Candidates for a level given the vectors chosen so far."""
        matrix, kind = divmod(level, 4)
        problem: SearchProblem = self.problem
        static, static_prunes = self._static_candidates(level)
        prunes: dict[str, int] = dict(static_prunes)
        candidates: list[_Vector] = static

        if problem.pruning:
            start: int = 4 * matrix
            weight: int = sum(v.weight for v in self.chosen[start:level])
            paf: list[int] = [0] * self.table.shifts
            for vector in self.chosen[start:level]:
                paf = [x + y for x, y in zip(paf, vector.paf, strict=True)]

            if kind == 3:
                need: int = problem.w - weight
                free: int = self._free(kind, matrix)
                key: tuple = (kind, free, matrix == MATRICES - 1, matrix == 0)
                target: tuple[int, tuple[int, ...]] = (need, tuple(-x for x in paf))
                candidates = self._d_index(key, static).get(target, [])
                prunes["gram"] += len(static) - len(candidates)
                if matrix == 1:
                    kept: list[_Vector] = [v for v in candidates if self._last_matrix_parity_ok(v)]
                    prunes["gram"] += len(candidates) - len(kept)
                    candidates = kept
            else:
                capacity: int = self._capacity_after(kind, matrix)
                exact: bool = matrix == MATRICES - 1
                kept = []
                for vector in candidates:
                    need = problem.w - weight - vector.weight
                    if need < 0 or need > capacity or (exact and need != capacity):
                        prunes["weight"] += 1
                    elif any(abs(x + y) > need for x, y in zip(paf, vector.paf, strict=True)):
                        prunes["gram"] += 1
                    else:
                        kept.append(vector)
                candidates = kept

        if problem.symmetry and kind != 0 and matrix > 0:
            shifts: list[int] = self._stabilizer(kind, matrix)
            if shifts:
                kept = [v for v in candidates if all(self.table.rotated_rank(v, s) >= v.rank for s in shifts)]
                prunes["symmetry"] += len(candidates) - len(kept)
                candidates = kept

        if level == 0 and problem.rng_seed:
            candidates = list(candidates)
            random.Random(problem.rng_seed).shuffle(candidates)

        if count:
            for rule, amount in prunes.items():
                self.counters.prunes[rule] += amount
        return candidates

    # Leaf check, independent of the pruning rules.

    def leaf_seeds(self) -> tuple[GSQuadSeed, ...] | None:
        w: int = self.problem.w
        quads: list[list[_Vector]] = [self.chosen[4 * i : 4 * i + 4] for i in range(MATRICES)]
        for quad in quads:
            if not quad[0].skew or sum(v.weight for v in quad) != w:
                return None
            if any(sum(column) for column in zip(*(v.paf for v in quad), strict=True)):
                return None
        for kind in range(len(KINDS)):
            masks: list[int] = [quad[kind].mask for quad in quads]
            if masks[0] & masks[1] or masks[0] & masks[2] or masks[1] & masks[2]:
                return None
            if masks[0] | masks[1] | masks[2] != self.full_masks[kind]:
                return None
        return tuple(GSQuadSeed(*(v.values for v in quad)) for quad in quads)

    # The walk itself.

    def start(self, only: _Vector | None = None) -> None:
        candidates: list[_Vector] = self.generate(0, count=only is None)
        if only is not None:
            candidates = [only]
        self.frames = [_Frame(0, candidates)]
        self.chosen = []

    def restore(self, positions: Sequence[int]) -> None:
        """Rebuild the stack recorded in a checkpoint without recounting prunes."""
        self.frames, self.chosen = [], []
        for level, pos in enumerate(positions):
            candidates: list[_Vector] = self.generate(level, count=False)
            self.frames.append(_Frame(level, candidates, pos))
            if level < len(positions) - 1:
                self.chosen.append(candidates[pos - 1])

    def positions(self) -> tuple[int, ...]:
        return tuple(frame.pos for frame in self.frames)

    def walk(self) -> Iterator[tuple[GSQuadSeed, ...]]:
        """Yield every solution in canonical order.

        Raises:
            _OutOfBudget: When the shared budget runs out; the stack then points at the next unvisited node.
        """
        while self.frames:
            frame: _Frame = self.frames[-1]
            if frame.pos >= len(frame.candidates):
                self.frames.pop()
                if self.chosen:
                    self.chosen.pop()
                continue
            if self.unit is not None and self.budget.superseded(self.unit):
                return
            if not self.budget.charge():
                raise _OutOfBudget

            vector: _Vector = frame.candidates[frame.pos]
            frame.pos += 1
            self.counters.nodes += 1
            self.counters.depth_histogram[frame.level] += 1
            self.chosen.append(vector)

            if frame.level == LEVELS - 1:
                seeds: tuple[GSQuadSeed, ...] | None = self.leaf_seeds()
                self.chosen.pop()
                if seeds is not None:
                    self.counters.solutions += 1
                    yield seeds
                continue

            self.frames.append(_Frame(frame.level + 1, self.generate(frame.level + 1, count=True)))


def _certified_result(seeds: tuple[GSQuadSeed, ...], problem: SearchProblem, stats: SearchStats) -> SearchResult:
    """Re-verify a triple from scratch before handing it out."""
    collection: DWCollection = certify_collection([gs_assemble(seed) for seed in seeds], [problem.w] * MATRICES)
    if not collection.certified.complete:
        msg: str = f"search produced a triple that does not verify: {collection.certified}"
        raise UncertifiedInput(msg)
    return SearchResult(seeds=seeds, stats=stats, collection=collection)


def _check_hint(problem: SearchProblem) -> SearchResult:
    hint: tuple[GSQuadSeed, ...] = problem.hint or ()
    try:
        result: SearchResult = _certified_result(
            hint,
            problem,
            SearchStats(nodes=0, elapsed=0.0, prunes={}, depth_histogram=(0,) * LEVELS, symmetry="hint"),
        )
    except (DWMError, ValueError) as e:
        msg: str = f"hint is not a valid skew disjoint triple: {e}"
        raise InvalidProblem(msg) from e
    logger.info("Hint for n=%d verified", problem.n)
    return result


def _restore_counters(walker: _Walker, state: SearchState) -> None:
    walker.counters.nodes = state.nodes
    walker.counters.prunes.update(state.prunes)
    if state.depth_histogram:
        walker.counters.depth_histogram = list(state.depth_histogram)
    walker.counters.solutions = state.solutions


def _search_sequential(
    problem: SearchProblem,
    state: SearchState | None,
    monitor: SearchMonitor | None,
) -> SearchResult:
    started: float = time.monotonic()
    previous_elapsed: float = state.elapsed if state else 0.0
    walker = _Walker(problem, _VectorTable(problem.n), _Budget(problem.budget))
    if state is not None and not state.is_fresh:
        _restore_counters(walker, state)
        walker.restore(state.positions)
        logger.info("Resuming n=%d search at depth %d after %d nodes", problem.n, len(state.positions), state.nodes)
    else:
        walker.start()
    if monitor is not None:
        monitor.attach(walker.counters, walker.symmetry_label)

    def stats() -> SearchStats:
        return walker.counters.snapshot(previous_elapsed + time.monotonic() - started, walker.symmetry_label)

    try:
        for seeds in walker.walk():
            logger.info("Found a triple for n=%d after %d nodes", problem.n, walker.counters.nodes)
            return _certified_result(seeds, problem, stats())
    except _OutOfBudget:
        snapshot: SearchStats = stats()
        blob: bytes = dump_checkpoint(
            SearchState(
                problem_hash=problem.problem_hash(),
                positions=walker.positions(),
                nodes=snapshot.nodes,
                prunes=snapshot.prunes,
                depth_histogram=snapshot.depth_histogram,
                solutions=snapshot.solutions,
                elapsed=snapshot.elapsed,
            ),
        )
        raise BudgetExceeded(snapshot, blob) from None
    raise SearchExhausted(stats())


def _search_parallel(problem: SearchProblem, threads: int, monitor: SearchMonitor | None) -> SearchResult:
    """Split the work by first-level candidate; the lowest unit with a solution wins, as in a sequential run."""
    started: float = time.monotonic()
    table = _VectorTable(problem.n)
    budget = _Budget(problem.budget)
    root = _Walker(problem, table, budget)
    roots: list[_Vector] = root.generate(0, count=True)
    total = _Counters()
    total.absorb(root.counters)

    walkers: list[_Walker] = [_Walker(problem, table, budget, unit=unit) for unit in range(len(roots))]
    label: str = root.symmetry_label
    if monitor is not None:
        for walker in walkers:
            monitor.attach(walker.counters, label)

    def run(unit: int) -> tuple[GSQuadSeed, ...] | None | _OutOfBudget:
        walker: _Walker = walkers[unit]
        walker.start(only=roots[unit])
        try:
            for seeds in walker.walk():
                budget.found(unit)
                return seeds
        except _OutOfBudget as e:
            return e
        return None

    outcome: tuple[GSQuadSeed, ...] | None = None
    stopped: int | None = None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(run, unit) for unit in range(len(roots))]
        for unit, future in enumerate(futures):
            result = future.result()
            if isinstance(result, _OutOfBudget):
                if stopped is None:
                    stopped = unit
            elif result is not None and stopped is None and outcome is None:
                outcome = result

    for walker in walkers:
        total.absorb(walker.counters)
    stats: SearchStats = total.snapshot(time.monotonic() - started, label)
    if outcome is not None:
        return _certified_result(outcome, problem, stats)
    if stopped is not None:
        # Every unit below the stopped one is finished, so a sequential walk resumes inside it.
        first, *rest = walkers[stopped].positions()
        blob: bytes = dump_checkpoint(
            SearchState(
                problem_hash=problem.problem_hash(),
                positions=(stopped + first, *rest),
                nodes=stats.nodes,
                prunes=stats.prunes,
                depth_histogram=stats.depth_histogram,
                solutions=stats.solutions,
                elapsed=stats.elapsed,
            ),
        )
        raise BudgetExceeded(stats, blob)
    raise SearchExhausted(stats)


def search_dw_triple(
    problem: SearchProblem,
    *,
    threads: int = 1,
    resume_from: bytes | None = None,
    monitor: SearchMonitor | None = None,
) -> SearchResult:
    """Find three disjoint skew W(4n, (4n-1)/3) whose supports cover J - I.

    Args:
        problem: What to search for, with its budget.
        threads: Worker threads; the first level is split between them.
        resume_from: A checkpoint blob from an earlier BudgetExceeded.
        monitor: Receives live counters for progress reporting.

    Raises:
        SearchExhausted: If no triple exists in the (symmetry-reduced) space.
        BudgetExceeded: If the node or time budget ran out; carries a checkpoint that resumes single-threaded.
        StaleCheckpoint: If resume_from belongs to another problem.
        InvalidProblem: If a hint was given and does not verify.

    Returns:
        The first triple in canonical order, verified from scratch.
    """
    if problem.hint is not None:
        return _check_hint(problem)

    state: SearchState | None = None
    if resume_from is not None:
        state = load_checkpoint(resume_from, problem.problem_hash())

    if threads > 1 and state is None:
        logger.info("Searching n=%d with %d threads", problem.n, threads)
        return _search_parallel(problem, threads, monitor)
    if threads > 1:
        logger.warning("Resuming from a checkpoint runs single-threaded")
    logger.info(
        "Searching n=%d, w=%d (pruning=%s, symmetry=%s)", problem.n, problem.w, problem.pruning, problem.symmetry
    )
    return _search_sequential(problem, state, monitor)


def resume(blob: bytes, problem: SearchProblem, *, monitor: SearchMonitor | None = None) -> SearchResult:
    """Continue a search from a checkpoint; an empty-progress checkpoint runs the full search."""
    return search_dw_triple(problem, resume_from=blob, monitor=monitor)


def checkpoint(problem: SearchProblem, positions: Sequence[int] = ()) -> bytes:
    """Write a checkpoint for a problem at the given stack positions (empty means not started)."""
    return dump_checkpoint(
        SearchState(problem_hash=problem.problem_hash(), positions=tuple(positions), depth_histogram=(0,) * LEVELS),
    )


def enumerate_dw_triples(problem: SearchProblem) -> Iterator[tuple[GSQuadSeed, ...]]:
    """Yield every solution of the problem in canonical order, ignoring the budget's node limit."""
    unlimited = SearchProblem(
        n=problem.n,
        budget=SearchBudget(node_limit=2**62, time_limit=problem.budget.time_limit),
        rng_seed=problem.rng_seed,
        pruning=problem.pruning,
        symmetry=problem.symmetry,
    )
    walker = _Walker(unlimited, _VectorTable(problem.n), _Budget(unlimited.budget))
    walker.start()
    yield from walker.walk()
