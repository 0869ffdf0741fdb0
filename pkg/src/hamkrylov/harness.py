"""Experiment runner emitting deterministic CSV artifacts.

Four experiment families are produced, all as flat CSV files designed to
be consumed by external plotting tools:

* ``convergence`` -- relative error vs basis dimension, one file per
  (problem, function) plus a combined file;
* ``phi-consistency`` -- explicit vs implicit phi evaluation at full
  dimension;
* ``adaptive`` -- actual error next to the a-posteriori estimate per
  step, for the two estimator-carrying methods;
* ``timings`` -- median wall time of basis generation with operation
  counters.

Dense reference vectors (matrix exponential and phi applied to b) are
cached as .npy files per (problem, function, h, seed) inside the output
directory: the dense 2n x 2n exponentials dominate the runtime
otherwise.  All non-timing fields are bit-reproducible for a fixed
config and seed.
"""

import csv
import os
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .approx import (
    approximate_action,
    error_estimate_arnoldi,
    error_estimate_hl,
)
from .dense import SingularMatrixError
from .hamiltonian import export_matrix_market
from .krylov import (
    ArnoldiProcess,
    HamiltonianLanczosProcess,
    METHOD_IDS,
    build_decomposition,
)
from .matfun import FUNCTION_IDS, expm, phi_explicit, phi_implicit
from .problems import PROBLEM_IDS, build_problem, random_b

#: Exact column schema shared by the convergence and timings files.
CSV_HEADER = (
    "problem,method,function,r,basis_dim,rel_error,"
    "wall_time_ns,matvecs,solves,inner_products"
)

PHI_HEADER = "problem,n,rel_diff,status"

ADAPTIVE_HEADER = "problem,method,k,basis_dim,actual_error,estimate"

DEFAULT_R_VALUES = tuple(range(2, 51, 2))

#: Environment variable overriding the default output directory.
OUTPUT_DIR_ENV = "HAMKRYLOV_OUTPUT_DIR"


@dataclass(frozen=True)
class ConvergenceRecord:
    """One experiment cell in the flat CSV schema."""

    problem: str
    method: str
    function: str
    r: int
    basis_dim: int
    rel_error: float
    wall_time_ns: int
    matvecs: int
    solves: int
    inner_products: int

    def to_row(self):
        return [
            self.problem,
            self.method,
            self.function,
            str(self.r),
            str(self.basis_dim),
            format(self.rel_error, ".17g"),
            str(self.wall_time_ns),
            str(self.matvecs),
            str(self.solves),
            str(self.inner_products),
        ]


@dataclass
class RunConfig:
    """Configuration shared by the experiment families."""

    problems: tuple = PROBLEM_IDS
    methods: tuple = METHOD_IDS
    r_values: tuple = DEFAULT_R_VALUES
    h: float = 0.01
    seed: int = 42
    functions: tuple = FUNCTION_IDS
    output_dir: Optional[Path] = None
    rejorth: bool = True


def resolve_output_dir(output_dir=None):
    """Pick the output directory: argument, environment, or ./results."""
    if output_dir is None:
        output_dir = os.environ.get(OUTPUT_DIR_ENV, "results")
    path = Path(output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header.split(","))
        writer.writerows(rows)
    return path


_oracle_memory = {}


def oracle_vector(instance, kind, h, seed, cache_dir=None):
    """Dense reference vector exp(hH)b or phi(hH)b, cached per problem.

    ``kind`` is "exp" or "phi"; the phi reference is evaluated in
    augmented (implicit) form, which stays defined for singular hH and
    serves as the oracle for both phi modes.
    """
    if kind not in ("exp", "phi"):
        raise ValueError("oracle kind must be 'exp' or 'phi'")
    key = (instance.id, kind, float(h), int(seed))
    if key in _oracle_memory:
        return _oracle_memory[key]
    cache_file = None
    if cache_dir is not None:
        tag = format(float(h), ".17g").replace(".", "p").replace("-", "m")
        cache_file = Path(cache_dir) / f"oracle_{instance.id}_{kind}_{tag}_{seed}.npy"
        if cache_file.exists():
            vec = np.load(cache_file)
            _oracle_memory[key] = vec
            return vec
    b = random_b(instance.H.dim, seed)
    dense = h * instance.H.to_dense()
    if kind == "exp":
        vec = expm(dense) @ b
    else:
        vec = phi_implicit(dense, b)
    if cache_file is not None:
        np.save(cache_file, vec)
    _oracle_memory[key] = vec
    return vec


def _rel_error(approx, reference):
    return float(np.linalg.norm(approx - reference) / np.linalg.norm(reference))


def run_cell(instance, method, function, r, h, seed, rejorth=True, cache_dir=None):
    """Run one (problem, method, function, r) cell and record it.

    The timing covers basis construction plus the small matrix-function
    evaluation.  phi_explicit cells on a singular projected matrix
    record rel_error nan rather than failing the whole run.
    """
    b = random_b(instance.H.dim, seed)
    kind = "exp" if function == "exp" else "phi"
    reference = oracle_vector(instance, kind, h, seed, cache_dir)
    t0 = time.perf_counter_ns()
    decomp = build_decomposition(method, instance.H, b, r, rejorth=rejorth)
    try:
        approx = approximate_action(decomp, function, h)
        err = _rel_error(approx, reference)
    except SingularMatrixError:
        err = float("nan")
    t1 = time.perf_counter_ns()
    return ConvergenceRecord(
        problem=instance.id,
        method=method,
        function=function,
        r=r,
        basis_dim=decomp.dim,
        rel_error=err,
        wall_time_ns=t1 - t0,
        matvecs=decomp.cost.matvecs,
        solves=decomp.cost.solves,
        inner_products=decomp.cost.inner_products,
    )


def _solve_capable_methods(instance, methods):
    if "HEKS" not in methods:
        return list(methods)
    if instance.H.solve_capable:
        return list(methods)
    print(
        f"notice: {instance.id}: linear solves unavailable (singular H), "
        "skipping HEKS cells",
        file=sys.stderr,
    )
    return [m for m in methods if m != "HEKS"]


def run_convergence(cfg):
    """Error-vs-dimension sweep; one CSV per (problem, function).

    A combined ``convergence.csv`` holding every row is written as well,
    which is what the plotting tools consume.  Returns the list of file
    paths written.
    """
    out = resolve_output_dir(cfg.output_dir)
    paths = []
    all_rows = []
    for pid in cfg.problems:
        instance = build_problem(pid)
        methods = _solve_capable_methods(instance, cfg.methods)
        for function in cfg.functions:
            rows = []
            for method in methods:
                for r in cfg.r_values:
                    if method == "HEKS" and r < 2:
                        continue
                    rec = run_cell(
                        instance, method, function, r, cfg.h, cfg.seed,
                        rejorth=cfg.rejorth, cache_dir=out,
                    )
                    rows.append(rec.to_row())
            all_rows.extend(rows)
            paths.append(
                _write_csv(out / f"convergence_{pid}_{function}.csv", CSV_HEADER, rows)
            )
    paths.insert(0, _write_csv(out / "convergence.csv", CSV_HEADER, all_rows))
    return paths


def run_phi_consistency(cfg):
    """Explicit vs implicit phi at full dimension, one row per problem.

    Emits ``phi_consistency.csv`` with the relative difference
    ||phi_expl - phi_impl|| / ||phi_impl||; problems where hH is
    singular get status "skipped".
    """
    out = resolve_output_dir(cfg.output_dir)
    rows = []
    for pid in cfg.problems:
        instance = build_problem(pid)
        b = random_b(instance.H.dim, cfg.seed)
        dense = cfg.h * instance.H.to_dense()
        implicit = phi_implicit(dense, b)
        try:
            explicit = phi_explicit(dense, b)
            diff = float(np.linalg.norm(explicit - implicit) / np.linalg.norm(implicit))
            status = "ok"
        except SingularMatrixError:
            diff = float("nan")
            status = "skipped"
        rows.append([pid, str(instance.n), format(diff, ".17g"), status])
    return _write_csv(out / "phi_consistency.csv", PHI_HEADER, rows)


def adaptive_table_rows(instance, method, k_max, h, seed, rejorth=True, cache_dir=None):
    """(k, basis_dim, actual_error, estimate) rows for one problem.

    Arnoldi advances two steps per row so that row k corresponds to
    basis dimension 2k for both methods, keeping the columns comparable.
    Stops early at breakdown.
    """
    b = random_b(instance.H.dim, seed)
    reference = oracle_vector(instance, "exp", h, seed, cache_dir)
    if method == "A":
        proc = ArnoldiProcess(instance.H, b, rejorth=rejorth)
        estimator = error_estimate_arnoldi
        steps_per_row = 2
    elif method == "HL":
        proc = HamiltonianLanczosProcess(instance.H, b, rejorth=rejorth)
        estimator = error_estimate_hl
    else:
        raise ValueError("adaptive table supports methods 'A' and 'HL'")
    if method == "HL":
        steps_per_row = 1
    rows = []
    for k in range(1, k_max + 1):
        alive = True
        for _ in range(steps_per_row):
            alive = proc.step()
            if not alive:
                break
        decomp = proc.to_decomposition()
        estimate = estimator(decomp, h, proc.b_norm)
        actual = _rel_error(approximate_action(decomp, "exp", h), reference)
        rows.append((k, decomp.dim, actual, estimate))
        if not alive:
            break
    return rows


def run_adaptive_table(problem, method, k_max, h=0.01, seed=42,
                       output_dir=None, rejorth=True):
    """Write the per-step error/estimate table for one problem."""
    out = resolve_output_dir(output_dir)
    instance = build_problem(problem)
    rows = adaptive_table_rows(
        instance, method, k_max, h, seed, rejorth=rejorth, cache_dir=out
    )
    formatted = [
        [problem, method, str(k), str(dim), format(a, ".17g"), format(e, ".17g")]
        for k, dim, a, e in rows
    ]
    return _write_csv(out / f"adaptive_{problem}_{method}.csv", ADAPTIVE_HEADER, formatted)


def run_timings(cfg, repetitions=5):
    """Median wall time of basis generation per (problem, method, r).

    One warm-up build is discarded, then the median of ``repetitions``
    timed builds is reported.  The rel_error column carries the
    exponential-approximation error of the final build so the file
    stands alone; counters come from a single build.
    """
    out = resolve_output_dir(cfg.output_dir)
    rows = []
    for pid in cfg.problems:
        instance = build_problem(pid)
        methods = _solve_capable_methods(instance, cfg.methods)
        b = random_b(instance.H.dim, cfg.seed)
        reference = oracle_vector(instance, "exp", cfg.h, cfg.seed, out)
        for method in methods:
            for r in cfg.r_values:
                if method == "HEKS" and r < 2:
                    continue
                build = lambda: build_decomposition(
                    method, instance.H, b, r, rejorth=cfg.rejorth
                )
                build()  # warm-up, discarded
                times = []
                for _ in range(repetitions):
                    t0 = time.perf_counter_ns()
                    decomp = build()
                    times.append(time.perf_counter_ns() - t0)
                err = _rel_error(approximate_action(decomp, "exp", cfg.h), reference)
                rec = ConvergenceRecord(
                    problem=pid,
                    method=method,
                    function="exp",
                    r=r,
                    basis_dim=decomp.dim,
                    rel_error=err,
                    wall_time_ns=int(statistics.median(times)),
                    matvecs=decomp.cost.matvecs,
                    solves=decomp.cost.solves,
                    inner_products=decomp.cost.inner_products,
                )
                rows.append(rec.to_row())
    return _write_csv(out / "timings.csv", CSV_HEADER, rows)


def export_problem_matrix(problem, output_dir=None):
    """Write a problem's Hamiltonian matrix in Matrix Market format."""
    out = resolve_output_dir(output_dir)
    instance = build_problem(problem)
    path = out / f"{problem}.mtx"
    export_matrix_market(instance.H, path)
    return path
