"""
Witt Tensor - Verification Graph

A LangGraph workflow that verifies every claim about A_(2) for one prime.
Each phase is a node; nodes read the shared state and return partial
updates. Checks and composition series accumulate through list reducers,
tables and timings through a dict merge.

    verify:   structure -> constructors -> lemmas -> split -> weights
                        -> chains -> theorem -> grothendieck -> END
    selftest: structure -> constructors -> linalg -> END

A node whose input is missing (because an earlier phase failed) records a
SKIPPED check instead of raising, so every run produces a full report.
"""

import functools
import logging
import operator
import time
from typing import Annotated, Any, Callable, Dict, List, Optional, TypedDict

import numpy as np
from langgraph.graph import END, StateGraph
from pydantic import ValidationError

from witt_tensor.algebra.ff_linalg import (
    Subspace,
    kernel,
    matmul,
    quotient_map,
    rank,
    rref,
    subspace_intersect,
    subspace_sum,
    validate_prime,
)
from witt_tensor.algebra.gmodules import (
    adjoint_module,
    identify_simple,
    natural_module,
    simple_module,
    tensor_square_natural,
    verma_module,
    weight_decomposition,
)
from witt_tensor.algebra.module_structure import nonzero_weights_equidimensional, stability_failures
from witt_tensor.algebra.tensor_pipeline import (
    ALT,
    SYM,
    build_chain,
    canonical_submodules,
    chain_degrees,
    chain_dims,
    chain_heads,
    chain_shape_failures,
    check_base_identities,
    check_bound_beyond_p,
    check_chain_shape,
    check_injectivity,
    check_lowest_weights,
    check_successors,
    check_surjectivity,
    check_top_level_crosscheck,
    check_weight_table,
    graded_dimension_failures,
    grothendieck_checks,
    s2_split,
    verify_main_theorem,
    weight_table,
)
from witt_tensor.algebra.witt_algebra import WittAlgebra
from witt_tensor.errors import VerificationError, WittTensorError
from witt_tensor.schemas import (
    ChainTable,
    CheckResult,
    CheckStatus,
    CompositionReport,
    RunMode,
    VerificationConfig,
    VerificationPhase,
    VerificationReport,
)

logger = logging.getLogger(__name__)


# ============================================================================
# STATE DEFINITION
# ============================================================================

def merge_dicts(left: Dict[str, Any], right: Dict[str, Any]) -> Dict[str, Any]:
    return {**left, **right}


class VerificationState(TypedDict, total=False):
    """State of one verification run."""
    prime: int
    mode: RunMode
    config: VerificationConfig

    # Mathematical objects, replaced by the node that builds them
    algebra: WittAlgebra
    modules: Annotated[Dict[str, Any], merge_dicts]
    decomposition: Any

    # Accumulated results
    checks: Annotated[List[CheckResult], operator.add]
    series: Annotated[List[CompositionReport], operator.add]
    tables: Annotated[Dict[str, Any], merge_dicts]
    timings: Annotated[Dict[str, float], merge_dicts]


# ============================================================================
# CHECK RECORDING
# ============================================================================

class PhaseRecorder:
    """Collects the checks of one node; library errors become FAIL entries."""

    def __init__(self, phase: VerificationPhase):
        self.phase = phase
        self.tag = f"[{phase.value.upper()}]"
        self.checks: List[CheckResult] = []

    def run(self, name: str, fn: Callable, *args, detail: str = "") -> Any:
        """Call fn; a str result becomes the detail, any other result is returned."""
        try:
            result = fn(*args)
        except (WittTensorError, ValidationError) as exc:
            logger.error("%s %s failed: %s", self.tag, name, exc)
            self.checks.append(CheckResult(name=name, phase=self.phase, status=CheckStatus.FAIL, detail=str(exc)))
            return None
        if isinstance(result, str):
            detail = result
        logger.info("%s %s passed %s", self.tag, name, detail)
        self.checks.append(CheckResult(name=name, phase=self.phase, status=CheckStatus.PASS, detail=detail))
        return result

    def expect(self, name: str, condition: bool, detail: str) -> bool:
        status = CheckStatus.PASS if condition else CheckStatus.FAIL
        (logger.info if condition else logger.error)("%s %s %s: %s", self.tag, name, status.value, detail)
        self.checks.append(CheckResult(name=name, phase=self.phase, status=status, detail=detail))
        return condition

    def add(self, results: List[CheckResult]) -> None:
        self.checks.extend(results)

    def skip(self, name: str, reason: str) -> None:
        logger.warning("%s %s skipped: %s", self.tag, name, reason)
        self.checks.append(CheckResult(name=name, phase=self.phase, status=CheckStatus.SKIPPED, detail=reason))


def timed(phase: VerificationPhase):
    """Record the wall time of a node under the phase name."""
    def decorator(node: Callable[[VerificationState], Dict[str, Any]]):
        @functools.wraps(node)
        def wrapper(state: VerificationState) -> Dict[str, Any]:
            logger.info("[%s] p=%d", phase.value.upper(), state["prime"])
            start = time.perf_counter()
            update = node(state)
            if state["config"].include_timings:
                update["timings"] = {phase.value: round(time.perf_counter() - start, 4)}
            return update
        return wrapper
    return decorator


# ============================================================================
# LINEAR ALGEBRA PROPERTIES
# ============================================================================

def _random_matrix(rng: np.random.Generator, p: int, max_rows: int = 8, max_cols: int = 12) -> np.ndarray:
    rows = int(rng.integers(1, max_rows + 1))
    cols = int(rng.integers(1, max_cols + 1))
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def _random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        t = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if rank(t, p) == n:
            return t


def check_rref_properties(p: int, trials: int, rng: np.random.Generator) -> str:
    """rref is idempotent, rank + nullity = cols, and row spaces are canonical under invertible row operations."""
    for trial in range(trials):
        m = _random_matrix(rng, p)
        reduced, r, _ = rref(m, p)
        if not np.array_equal(rref(reduced, p)[0], reduced):
            raise VerificationError(f"trial {trial}: rref is not idempotent")
        if r + kernel(m, p).dim != m.shape[1]:
            raise VerificationError(f"trial {trial}: rank + nullity != {m.shape[1]}")
        t = _random_invertible(m.shape[0], p, rng)
        if Subspace.span(matmul(t, m, p), p, m.shape[1]) != Subspace.span(m, p, m.shape[1]):
            raise VerificationError(f"trial {trial}: row space of T.m differs from that of m")
    return f"{trials} random matrices"


def check_subspace_properties(p: int, trials: int, rng: np.random.Generator) -> str:
    """dim(a+b) + dim(a∩b) = dim a + dim b, and quotient maps have the promised kernel and section."""
    for trial in range(trials):
        n = int(rng.integers(1, 13))
        a = Subspace.span(rng.integers(0, p, size=(int(rng.integers(1, n + 1)), n)), p, n)
        b = Subspace.span(rng.integers(0, p, size=(int(rng.integers(1, n + 1)), n)), p, n)
        if subspace_sum(a, b).dim + subspace_intersect(a, b).dim != a.dim + b.dim:
            raise VerificationError(f"trial {trial}: modular dimension formula fails")
        q, section = quotient_map(n, a)
        if not np.array_equal(matmul(q, section, p), np.eye(n - a.dim, dtype=np.int64)):
            raise VerificationError(f"trial {trial}: q.section is not the identity")
        if a.dim and matmul(q, a.basis.T, p).any():
            raise VerificationError(f"trial {trial}: q does not vanish on the subspace")
        if q.shape[0] and rank(q, p) != n - a.dim:
            raise VerificationError(f"trial {trial}: q is not onto")
    return f"{trials} random subspace pairs"


def check_stability(module, config: VerificationConfig) -> str:
    """The factor multiset survives random choices of minimal submodules."""
    if failures := stability_failures(module, config.shuffles, config.seed, config.enumeration_cap):
        raise VerificationError(f"{module.name}: factor multiset changed under shuffles {failures}")
    return f"{config.shuffles} shuffles, factor multiset unchanged"


# ============================================================================
# NODE FUNCTIONS
# ============================================================================

@timed(VerificationPhase.STRUCTURE)
def structure_node(state: VerificationState) -> Dict[str, Any]:
    """Check the presentation of W(1)."""
    algebra = WittAlgebra(state["prime"])
    recorder = PhaseRecorder(VerificationPhase.STRUCTURE)
    recorder.add(algebra.verify_structure())
    return {"algebra": algebra, "checks": recorder.checks}


@timed(VerificationPhase.CONSTRUCTORS)
def constructors_node(state: VerificationState) -> Dict[str, Any]:
    """Build every module, validate it and run the identification checks."""
    algebra = state["algebra"]
    p = algebra.p
    recorder = PhaseRecorder(VerificationPhase.CONSTRUCTORS)

    natural = recorder.run("constructors.natural_module", natural_module, algebra, detail=f"A(1), dim {p}")
    vermas = recorder.run("constructors.verma_modules",
                          lambda: [verma_module(algebra, lam) for lam in range(p)],
                          detail=f"Z(λ) for λ = 0..{p - 1}")
    simples = recorder.run("constructors.simple_modules",
                           lambda: [simple_module(algebra, lam) for lam in range(p)],
                           detail=f"L(λ) for λ = 0..{p - 1}")
    adjoint = recorder.run("constructors.adjoint_module", adjoint_module, algebra, detail=f"ad, dim {p}")
    a2 = recorder.run("constructors.tensor_square", tensor_square_natural, algebra,
                      detail=f"A_(2), dim {p * p}, equal to the Kronecker sum")

    if natural is not None and vermas is not None:
        recorder.expect(
            "constructors.natural_is_verma",
            all(np.array_equal(natural.rho(i), vermas[p - 1].rho(i)) for i in algebra.indices),
            f"A(1) and Z({p - 1}) have identical action matrices",
        )
    if simples is not None:
        def identify_all() -> str:
            for lam, module in enumerate(simples):
                label = identify_simple(module)
                if label.highest_weight != lam:
                    raise VerificationError(f"L({lam}) identified as {label.notation()}")
            return f"L(λ) = L⁻(μ) correspondence holds for all {p} labels"
        recorder.run("constructors.simple_labels", identify_all)
    if adjoint is not None:
        def identify_adjoint() -> str:
            label = identify_simple(adjoint)
            if label.highest_weight != p - 2:
                raise VerificationError(f"adjoint identified as {label.notation()}, expected L({p - 2})")
            return f"adjoint ≅ {label}"
        recorder.run("constructors.adjoint_identification", identify_adjoint)

    built = [m for m in [natural, adjoint, a2] + (vermas or []) + (simples or []) if m is not None]

    def weights_complete() -> str:
        for module in built:
            weight_decomposition(module)
        return f"weight spaces fill all {len(built)} modules"

    recorder.run("constructors.weight_completeness", weights_complete)
    uneven = [m.name for m in built if not nonzero_weights_equidimensional(m)]
    recorder.expect("constructors.equal_nonzero_weights", not uneven,
                    f"uneven nonzero weights in {uneven}" if uneven else f"{len(built)} modules")

    modules = {"A(1)": natural, "adjoint": adjoint, "A_(2)": a2}
    return {"modules": {k: v for k, v in modules.items() if v is not None}, "checks": recorder.checks}


@timed(VerificationPhase.LINALG)
def linalg_node(state: VerificationState) -> Dict[str, Any]:
    """Randomized properties of the linear algebra kernel."""
    config = state["config"]
    rng = np.random.default_rng(config.seed)
    recorder = PhaseRecorder(VerificationPhase.LINALG)
    for p in sorted({5, 7, state["prime"]}):
        recorder.run(f"linalg.rref.p{p}", check_rref_properties, p, config.linalg_trials, rng)
        recorder.run(f"linalg.subspaces.p{p}", check_subspace_properties, p, config.linalg_trials, rng)
    return {"checks": recorder.checks}


@timed(VerificationPhase.LEMMAS)
def lemmas_node(state: VerificationState) -> Dict[str, Any]:
    """Injectivity of e_1, e_2 on the homogeneous components of A_(2)."""
    recorder = PhaseRecorder(VerificationPhase.LEMMAS)
    a2 = state.get("modules", {}).get("A_(2)")
    if a2 is None:
        recorder.skip("lemmas.injectivity", "A_(2) was not built")
    else:
        recorder.run("lemmas.injectivity", check_injectivity, a2)
    return {"checks": recorder.checks}


@timed(VerificationPhase.SPLIT)
def split_node(state: VerificationState) -> Dict[str, Any]:
    """Symmetric / antisymmetric split, canonical submodules, top levels."""
    recorder = PhaseRecorder(VerificationPhase.SPLIT)
    p = state["prime"]
    d = recorder.run("split.s2_split", s2_split, p, state["algebra"],
                     detail=f"dim A_s = {p * (p + 1) // 2}, dim A_a = {p * (p - 1) // 2}")
    if d is not None:
        d = recorder.run("split.canonical_submodules", canonical_submodules, d,
                         detail=f"A_s' ≅ Z({p - 1}), A_a' ≅ L({p - 1}); "
                                f"dim A_s+ = {p * (p - 1) // 2}, dim A_a+ = {(p - 1) * (p - 2) // 2}")
    else:
        recorder.skip("split.canonical_submodules", "s2_split failed")
    return {"decomposition": d, "checks": recorder.checks}


@timed(VerificationPhase.WEIGHTS)
def weights_node(state: VerificationState) -> Dict[str, Any]:
    """Weight-space dimensions of the six modules of the tensor square."""
    recorder = PhaseRecorder(VerificationPhase.WEIGHTS)
    d = state.get("decomposition")
    if d is None:
        recorder.skip("weights.table", "decomposition unavailable")
        return {"checks": recorder.checks}
    table = recorder.run("weights.build", weight_table, d, detail="weight spaces computed")
    if table is None:
        return {"checks": recorder.checks}
    recorder.run("weights.table", check_weight_table, table)
    recorder.run("weights.top_level_crosscheck", check_top_level_crosscheck, d, table)
    return {"checks": recorder.checks, "tables": {"weights": table.model_dump(mode="json")}}


CHAIN_CHECKS = [
    ("shape", check_chain_shape),
    ("lowest_weights", check_lowest_weights),
    ("base_identities", check_base_identities),
    ("successors", check_successors),
    ("surjectivity", check_surjectivity),
]


def record_graded_dims(recorder: PhaseRecorder, d, kind: str) -> None:
    """One PASS per generator meeting floor(l/2)+1, one FAIL per (generator, l) missing it."""
    failures = graded_dimension_failures(d, kind)
    for i in d.degrees(kind):
        name = f"chains.graded_dims.{kind}.v{i}"
        missed = [(l, actual, expected) for j, l, actual, expected in failures if j == i]
        if not missed:
            recorder.expect(name, True, f"dim u(b+)_l.v_{i} = floor(l/2)+1 for 0 <= l <= {d.p - i}")
        for l, actual, expected in missed:
            recorder.expect(f"{name}.l{l}", False, f"dim u(b+)_{l}.v_{i} = {actual}, expected {expected}")


@timed(VerificationPhase.CHAINS)
def chains_node(state: VerificationState) -> Dict[str, Any]:
    """The spans A_s+[i], A_a+[j] and the lemmas about their generators, one top level at a time."""
    recorder = PhaseRecorder(VerificationPhase.CHAINS)
    d = state.get("decomposition")
    if d is None or d.sym_plus is None:
        for kind in (SYM, ALT):
            recorder.skip(f"chains.build.{kind}", "top levels unavailable")
        return {"checks": recorder.checks}

    cap = state["config"].enumeration_cap
    tables = {}
    for kind in (SYM, ALT):
        degrees = chain_degrees(d.p, kind)
        built = recorder.run(f"chains.build.{kind}", build_chain, d, kind,
                             detail=f"one generator in each degree {degrees}")
        if built is None:
            for name, _ in CHAIN_CHECKS:
                recorder.skip(f"chains.{name}.{kind}", "generators unavailable")
            continue
        d = built
        for name, check in CHAIN_CHECKS:
            recorder.run(f"chains.{name}.{kind}", check, d, kind)
        record_graded_dims(recorder, d, kind)
        heads = recorder.run(f"chains.heads.{kind}", chain_heads, d, kind, cap,
                             detail=", ".join(f"L⁻({i % d.p})" for i in degrees))
        tables[f"{kind}_chain"] = ChainTable(
            kind=kind, degrees=degrees, dims=chain_dims(d, kind), heads=heads or [],
            nested=not chain_shape_failures(d, kind),
        ).model_dump(mode="json")

    if d.sym_chain:
        recorder.run("chains.bound_beyond_p", check_bound_beyond_p, d)
    else:
        recorder.skip("chains.bound_beyond_p", "symmetric chain unavailable")
    return {"decomposition": d, "checks": recorder.checks, "tables": tables}


@timed(VerificationPhase.THEOREM)
def theorem_node(state: VerificationState) -> Dict[str, Any]:
    """Composition structure of both top levels, each claim on its own, and stability."""
    recorder = PhaseRecorder(VerificationPhase.THEOREM)
    config = state["config"]
    d = state.get("decomposition")
    if d is None or d.sym_plus is None:
        recorder.skip("theorem", "top levels unavailable")
        return {"checks": recorder.checks}

    update: Dict[str, Any] = {"checks": recorder.checks}
    if not (d.sym_chain and d.alt_chain):
        recorder.skip("theorem.claims", "a chain is unavailable")
    else:
        result = recorder.run("theorem.claims", verify_main_theorem, d, config.enumeration_cap,
                              detail="every claim about A_s+ and A_a+ judged")
        if result is not None:
            sym_report, alt_report, claims = result
            for name, (holds, detail) in claims.items():
                recorder.expect(f"theorem.{name}", holds, detail)
            update["series"] = [report for report in (sym_report, alt_report) if report is not None]

    if state["prime"] <= config.stability_max_prime:
        for module in (d.sym_plus, d.alt_plus, d.a2):
            recorder.run(f"theorem.stability.{module.name}", check_stability, module, config)
    return update


@timed(VerificationPhase.GROTHENDIECK)
def grothendieck_node(state: VerificationState) -> Dict[str, Any]:
    """[A] and [L(p-1) (x) L(p-1)] from the pieces and from the generic series."""
    recorder = PhaseRecorder(VerificationPhase.GROTHENDIECK)
    d = state.get("decomposition")
    if d is None or d.sym_plus is None:
        recorder.skip("grothendieck.identities", "top levels unavailable")
        return {"checks": recorder.checks}
    result = recorder.run("grothendieck.identities", grothendieck_checks, d, state["config"].enumeration_cap,
                          detail="assembled and direct multiplicity vectors agree")
    update: Dict[str, Any] = {"checks": recorder.checks}
    if result is not None:
        reports, details = result
        for key, detail in details.items():
            recorder.expect(f"grothendieck.{key}", True, detail)
        update["series"] = reports
    return update


# ============================================================================
# GRAPH CONSTRUCTION
# ============================================================================

VERIFY_PHASES = [
    ("structure", structure_node),
    ("constructors", constructors_node),
    ("lemmas", lemmas_node),
    ("split", split_node),
    ("weights", weights_node),
    ("chains", chains_node),
    ("theorem", theorem_node),
    ("grothendieck", grothendieck_node),
]

SELFTEST_PHASES = [
    ("structure", structure_node),
    ("constructors", constructors_node),
    ("linalg", linalg_node),
]


@functools.lru_cache(maxsize=None)
def build_verification_graph(mode: RunMode = RunMode.VERIFY):
    """
    Build and compile the verification graph for a run mode.

    Returns:
        Compiled LangGraph
    """
    phases = VERIFY_PHASES if mode == RunMode.VERIFY else SELFTEST_PHASES
    builder = StateGraph(VerificationState)
    for name, node in phases:
        builder.add_node(name, node)
    builder.set_entry_point(phases[0][0])
    for (source, _), (target, _) in zip(phases, phases[1:]):
        builder.add_edge(source, target)
    builder.add_edge(phases[-1][0], END)
    return builder.compile()


def draw_graph(mode: RunMode = RunMode.VERIFY) -> str:
    """ASCII rendering of the graph (needs grandalf)."""
    return build_verification_graph(mode).get_graph().draw_ascii()


# ============================================================================
# EXECUTION
# ============================================================================

def run_verification(
    prime: int,
    config: Optional[VerificationConfig] = None,
    mode: RunMode = RunMode.VERIFY,
) -> VerificationReport:
    """
    Run the verification graph for one prime.

    Args:
        prime: characteristic p > 3
        config: run knobs; defaults to VerificationConfig()
        mode: VERIFY runs the whole pipeline, SELFTEST only the axiom suites

    Returns:
        The VerificationReport; its status is PASS iff every check passed
    """
    prime = validate_prime(prime)
    config = config or VerificationConfig()
    graph = build_verification_graph(mode)
    logger.info("[RUN] %s p=%d", mode.value, prime)
    final = graph.invoke({
        "prime": prime,
        "mode": mode,
        "config": config,
        "modules": {},
        "checks": [],
        "series": [],
        "tables": {},
        "timings": {},
    })
    report = VerificationReport(
        prime=prime,
        mode=mode,
        checks=final.get("checks", []),
        tables=final.get("tables", {}),
        series=final.get("series", []),
        timings=final.get("timings", {}) if config.include_timings else {},
    )
    logger.info("[RUN] p=%d finished: %s (%d checks, %d failures)",
                prime, report.status.value, len(report.checks), len(report.failures()))
    return report
