"""End-to-end solving: selection setup, saturation preprocessing, CDCL run.

A `sat` answer is only certified when the non-ground clauses are saturated
under a valid selection, so `solve_problem` saturates first and refuses to
continue otherwise unless explicitly allowed.  Saturating an annotated
problem may derive new clauses; how those get a selection is controlled by
`extend_select` (`error` refuses, which keeps annotated trigger choices
honest).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .cdcl import Budgets, RunResult, Solver
from .models import (
    Interpretation,
    VerifyReport,
    combine,
    filtered_ground_instances,
    produce_model,
    verify_no_falsified,
)
from .ordering import OrderingSpec
from .parser import Problem
from .saturation import (
    InferenceBudget,
    InvalidSelectionError,
    SaturationOutcome,
    SaturationReport,
    check_saturated,
    saturate,
)
from .selection import SelectionError, auto_select, validate_selection
from .terms import Clause, Literal


class ContractError(Exception):
    """Precondition violations that map to exit status 2."""


@dataclass(frozen=True)
class SolveOptions:
    ordering: OrderingSpec = OrderingSpec()
    select: str = "annotated"  # annotated | max | maximal | neg
    extend_select: Optional[str] = None  # default: error for annotated,
    # otherwise the active auto strategy
    instantiate: str = "lazy"
    allow_unsaturated: bool = False
    budgets: Budgets = Budgets()
    saturation_budget: InferenceBudget = InferenceBudget()
    trace: bool = False
    horn_monitor: bool = False
    twosat_monitor: bool = False

    def resolved_extend(self) -> str:
        if self.extend_select is not None:
            return self.extend_select
        return "error" if self.select == "annotated" else self.select


@dataclass
class SolveResult:
    verdict_line: str  # "sat" | "unsat" | "unknown"
    run: Optional[RunResult] = None
    saturation: Optional[SaturationReport] = None
    warnings: list[str] = field(default_factory=list)
    theory: list[Clause] = field(default_factory=list)
    selection: dict[int, frozenset[int]] = field(default_factory=dict)

    @property
    def model(self) -> tuple[Literal, ...]:
        return self.run.verdict.model if self.run else ()


def build_selection(problem: Problem,
                    options: SolveOptions) -> dict[int, frozenset[int]]:
    """Selection for every theory clause, validated under the ordering."""
    o = options.ordering
    out: dict[int, frozenset[int]] = {}
    for c in problem.theory:
        if options.select == "annotated":
            if c.cid not in problem.selection:
                raise ContractError(
                    f"selection not valid: clause '{c}' has no selection "
                    f"annotation (use --select to pick an automatic strategy)")
            out[c.cid] = problem.selection[c.cid]
        else:
            try:
                out[c.cid] = auto_select(c, o, options.select)
            except SelectionError as exc:
                raise ContractError(f"selection not valid: {exc}") from exc
        try:
            result = validate_selection(c, out[c.cid], o)
        except ValueError as exc:  # oversized or malformed selection
            raise ContractError(
                f"selection not valid for clause '{c}': {exc}") from exc
        if not result:
            witness = sorted(result.witness or ())
            raise ContractError(
                f"selection not valid for clause '{c}': {result.reason} "
                f"(witness positions {witness})")
    return out


def presaturate(problem: Problem, options: SolveOptions,
                selection: dict[int, frozenset[int]]) -> SaturationReport:
    try:
        return saturate(problem.theory, selection, options.ordering,
                        budget=options.saturation_budget,
                        extend=options.resolved_extend())
    except InvalidSelectionError as exc:
        raise ContractError(f"selection not valid: {exc}") from exc
    except SelectionError as exc:
        raise ContractError(
            f"theory not saturated: saturation derived a clause the "
            f"selection cannot be extended to ({exc})") from exc


def solve_problem(problem: Problem, options: SolveOptions) -> SolveResult:
    selection = build_selection(problem, options)
    report = presaturate(problem, options, selection)
    result = SolveResult("unknown", saturation=report)
    if report.outcome is SaturationOutcome.DERIVED_BOTTOM:
        # The theory alone is contradictory; no ground part can rescue it.
        result.verdict_line = "unsat"
        return result
    if report.outcome is SaturationOutcome.BUDGET_EXCEEDED:
        if not options.allow_unsaturated:
            raise ContractError(
                "theory not saturated: saturation budget exceeded; a sat "
                "answer would be uncertified (pass --allow-unsaturated to "
                "run anyway)")
        result.warnings.append(
            "running on an unsaturated theory: sat answers are not certified")
    theory = [c for c in report.clauses if not c.is_ground]
    derived_ground = [c for c in report.clauses if c.is_ground and not c.is_empty]
    result.theory = theory
    result.selection = report.selection
    solver = Solver(
        ground=list(problem.ground) + derived_ground,
        theory=theory,
        selection=report.selection,
        ordering=options.ordering,
        instantiate_mode=options.instantiate,
        budgets=options.budgets,
        trace=options.trace,
        horn_monitor=options.horn_monitor,
        twosat_monitor=options.twosat_monitor,
    )
    run = solver.run()
    result.run = run
    result.verdict_line = run.verdict.kind
    return result


@dataclass
class VerifyOutcome:
    report: VerifyReport
    constructed: Interpretation
    combined: Interpretation


def verify_model(problem: Problem, model_literals: list[Literal],
                 options: SolveOptions, depth: int) -> VerifyOutcome:
    """Desk-scale check that a ground model extends to the full theory.

    Builds the candidate interpretation over the depth-bounded filtered
    grounding of the theory, combines it with the given ground model, and
    reports any instance the combination falsifies.
    """
    selection = build_selection(problem, options)
    ground_model = Interpretation(model_literals)
    entries = [(c, selection[c.cid]) for c in problem.theory]
    filtered = filtered_ground_instances(entries, ground_model,
                                         problem.signature, depth)
    constructed, _records = produce_model(filtered, options.ordering)
    combined = combine(constructed, ground_model)
    report = verify_no_falsified(combined, problem.theory, problem.ground,
                                 problem.signature, depth)
    return VerifyOutcome(report, constructed, combined)


def check_problem_saturated(problem: Problem,
                            options: SolveOptions) -> SaturationReport:
    selection = build_selection(problem, options)
    try:
        return check_saturated(problem.theory, selection, options.ordering)
    except InvalidSelectionError as exc:
        raise ContractError(f"selection not valid: {exc}") from exc


@dataclass
class SelectionCheck:
    clause: Clause
    valid: bool
    witness: tuple[int, ...] = ()
    reason: str = ""


def check_problem_selection(problem: Problem,
                            options: SolveOptions) -> list[SelectionCheck]:
    o = options.ordering
    out: list[SelectionCheck] = []
    for c in problem.theory:
        if options.select == "annotated" and c.cid not in problem.selection:
            out.append(SelectionCheck(c, False, (),
                                      "clause has no selection annotation"))
            continue
        if options.select == "annotated":
            sel = problem.selection[c.cid]
        else:
            try:
                sel = auto_select(c, o, options.select)
            except SelectionError as exc:
                out.append(SelectionCheck(c, False, (), str(exc)))
                continue
        result = validate_selection(c, sel, o)
        out.append(SelectionCheck(
            c, result.valid, tuple(sorted(result.witness or ())),
            result.reason))
    return out


def solve_timed(problem: Problem, options: SolveOptions
                ) -> tuple[SolveResult, float]:
    started = time.monotonic()
    result = solve_problem(problem, options)
    return result, time.monotonic() - started
