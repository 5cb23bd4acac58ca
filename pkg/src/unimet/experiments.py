"""Monte Carlo scatter experiments over Haar-random unitary pairs.

For each sampled pair ``(U, V)`` and each weight vector the harness
records the two sides of the triangle bound,

    lhs = measure(U V),   rhs = measure(U) + measure(V),

for both the plain weighted eigenphase sum (``variant='enorm'``) and its
global-phase minimized counterpart (``variant='nenorm'``).  The slack
``rhs - lhs`` must never be negative beyond tolerance.

Reproducibility: sample ``k`` of dimension ``n`` is drawn from the random
stream ``(seed, (n << 32) | k)``, so records do not depend on worker
count or scheduling order.  CSV output is byte-identical for identical
configurations.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__ as _pkg_version
from .haar import RNG_ALGORITHM, SeededRng, haar_unitary
from .metrics import PhaseShiftMinimizer, lambda_basis
from .unitary import UnitaryMatrix, WeightVector, adjoint, compose, weight_vector

__all__ = [
    "VARIANTS",
    "ExperimentConfig",
    "ScatterRecord",
    "GroupSummary",
    "ScatterResult",
    "parse_weight_spec",
    "resolve_weight_specs",
    "nondegenerate_lambda_indices",
    "run_scatter",
    "records_to_csv",
    "worker_count",
]

VARIANTS = ("enorm", "nenorm")

#: environment variable capping the worker pool
THREADS_ENV = "UNIMET_THREADS"


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    """Knobs shared by the scatter harness and the property suite."""

    dims: tuple[int, ...] = (2, 3, 4)
    samples: int = 1000
    seed: int = 0
    weight_specs: tuple[str, ...] | None = None
    tolerance: float = 1e-9
    output_dir: str | None = None

    def validate(self) -> None:
        if not self.dims or any((not isinstance(n, (int, np.integer))) or n < 1 for n in self.dims):
            raise ValueError("dims must be a nonempty collection of integers >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be an integer in [0, 2**64)")
        if not (self.tolerance > 0.0):
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class ScatterRecord:
    n: int
    weight_label: str
    variant: str
    sample_id: int
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


@dataclass
class GroupSummary:
    n: int
    weight_label: str
    variant: str
    samples: int
    min_slack: float
    mean_slack: float
    violations: int


@dataclass
class ScatterResult:
    records: list[ScatterRecord]
    summaries: list[GroupSummary]
    meta: dict = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(s.violations for s in self.summaries)


# ---------------------------------------------------------------------------
# weight specifications
# ---------------------------------------------------------------------------

def parse_weight_spec(token: str):
    """Parse one weight spec token.

    Accepted forms: ``"all"`` (every ones-prefix vector for the dimension),
    ``"lambda_<m>"`` (single ones-prefix vector), or explicit values joined
    by colons, e.g. ``"2:1:0.5"``.
    """
    tok = token.strip()
    if not tok:
        raise ValueError("empty weight spec")
    if tok == "all":
        return ("all", None)
    if tok.startswith("lambda_"):
        try:
            m = int(tok[len("lambda_"):])
        except ValueError as exc:
            raise ValueError(f"bad weight spec {token!r}") from exc
        if m < 1:
            raise ValueError(f"bad weight spec {token!r}: index must be >= 1")
        return ("lambda", m)
    try:
        values = np.array([float(x) for x in tok.split(":")])
    except ValueError as exc:
        raise ValueError(f"bad weight spec {token!r}") from exc
    weight_vector(values)  # raises if inadmissible
    return ("explicit", values)


def nondegenerate_lambda_indices(n: int) -> list[int]:
    """Ones-prefix indices with pairwise distinct phase-minimized measures.

    Two exact degeneracies hold for the phase-minimized family: the two-ones
    value is always twice the one-one value, and in odd dimensions the
    all-ones value equals the drop-one value.  (No further collapse occurs;
    interior odd prefixes such as m = 3 at n = 4 are genuinely distinct;
    see ``diag(1, 1, -1, -1)``, whose minimized values are m*pi/2.)  The
    full-weight index ``n`` is always kept as the canonical representative
    of its pair.
    """
    keep = {1, n}
    keep.update(m for m in range(3, n) if not (n % 2 == 1 and m == n - 1))
    return sorted(keep)


def _explicit_label(values: np.ndarray) -> str:
    return "mu_" + "_".join(format(v, "g") for v in values)


def resolve_weight_specs(
    n: int, specs: tuple[str, ...] | None, variant: str
) -> list[tuple[str, WeightVector]]:
    """Weight vectors applicable to dimension ``n`` for one variant.

    With no explicit specs the plain variant uses every ones-prefix vector
    and the phase-minimized variant only the non-degenerate ones.  Explicit
    specs are honored verbatim; entries that cannot apply to ``n`` (longer
    prefix, wrong explicit length) are skipped.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if specs is None:
        if variant == "enorm":
            indices = range(1, n + 1)
        else:
            indices = nondegenerate_lambda_indices(n)
        return [(f"lambda_{m}", lambda_basis(m, n)) for m in indices]
    out: list[tuple[str, WeightVector]] = []
    for token in specs:
        kind, payload = parse_weight_spec(token)
        if kind == "all":
            for m in range(1, n + 1):
                item = (f"lambda_{m}", lambda_basis(m, n))
                if item[0] not in [lab for lab, _ in out]:
                    out.append(item)
        elif kind == "lambda":
            if payload <= n and f"lambda_{payload}" not in [lab for lab, _ in out]:
                out.append((f"lambda_{payload}", lambda_basis(payload, n)))
        else:
            if payload.shape[0] == n:
                item = (_explicit_label(payload), weight_vector(payload))
                if item[0] not in [lab for lab, _ in out]:
                    out.append(item)
    return out


def worker_count() -> int:
    """Worker pool size, capped by the UNIMET_THREADS environment variable."""
    cap = os.environ.get(THREADS_ENV)
    default = min(8, os.cpu_count() or 1)
    if cap is None:
        return default
    try:
        value = int(cap)
    except ValueError as exc:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from exc
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be >= 1, got {value}")
    return value


# ---------------------------------------------------------------------------
# the harness
# ---------------------------------------------------------------------------

def _sample_stream(n: int, sample_id: int) -> int:
    return (n << 32) | sample_id


def _one_sample(cfg, weights_by_variant, n, sample_id, pair_factory):
    gen = SeededRng(seed=cfg.seed, stream_id=_sample_stream(n, sample_id)).generator()
    if pair_factory is None:
        u = haar_unitary(n, gen)
        v = haar_unitary(n, gen)
    else:
        u, v = pair_factory(n, sample_id, gen)
        if not isinstance(u, UnitaryMatrix) or not isinstance(v, UnitaryMatrix):
            raise TypeError("pair_factory must return validated unitaries")
    uv = compose(u, v)

    records = []
    enorm_weights = weights_by_variant["enorm"]
    if enorm_weights:
        abs_u = u.spectrum.abs_phases_desc
        abs_v = v.spectrum.abs_phases_desc
        abs_uv = uv.spectrum.abs_phases_desc
        for label, wv in enorm_weights:
            lhs = float(np.dot(wv.weights, abs_uv))
            rhs = float(np.dot(wv.weights, abs_u)) + float(np.dot(wv.weights, abs_v))
            records.append(ScatterRecord(n, label, "enorm", sample_id, lhs, rhs))
    nenorm_weights = weights_by_variant["nenorm"]
    if nenorm_weights:
        min_u = PhaseShiftMinimizer(u.spectrum.phases)
        min_v = PhaseShiftMinimizer(v.spectrum.phases)
        min_uv = PhaseShiftMinimizer(uv.spectrum.phases)
        for label, wv in nenorm_weights:
            lhs = min_uv.minimize(wv).value
            rhs = min_u.minimize(wv).value + min_v.minimize(wv).value
            records.append(ScatterRecord(n, label, "nenorm", sample_id, lhs, rhs))
    return records


def run_scatter(cfg: ExperimentConfig, pair_factory=None) -> ScatterResult:
    """Run the triangle-bound scatter experiment.

    Parameters
    ----------
    cfg : ExperimentConfig
    pair_factory : callable, optional
        ``(n, sample_id, generator) -> (U, V)`` replacing the default
        independent Haar pair; used to inject structured pairs in tests.

    Returns
    -------
    ScatterResult
        Records in canonical order (dimension, weight, variant, sample),
        per-group summaries, and metadata sufficient to reproduce the run.
    """
    cfg.validate()
    plan: list[tuple[int, dict]] = []
    for n in cfg.dims:
        weights_by_variant = {
            variant: resolve_weight_specs(n, cfg.weight_specs, variant)
            for variant in VARIANTS
        }
        if not any(weights_by_variant.values()):
            raise ValueError(f"no weight spec applies to dimension {n}")
        plan.append((n, weights_by_variant))

    tasks = [
        (n, weights_by_variant, sample_id)
        for n, weights_by_variant in plan
        for sample_id in range(cfg.samples)
    ]
    workers = worker_count()
    if workers == 1 or len(tasks) == 1:
        chunks = [
            _one_sample(cfg, wbv, n, sid, pair_factory) for n, wbv, sid in tasks
        ]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    lambda t: _one_sample(cfg, t[1], t[0], t[2], pair_factory), tasks
                )
            )

    # canonical record order, independent of scheduling
    group_rank: dict[tuple[int, str, str], int] = {}
    for n, weights_by_variant in plan:
        for variant in VARIANTS:
            for label, _ in weights_by_variant[variant]:
                group_rank[(n, label, variant)] = len(group_rank)
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: (group_rank[(r.n, r.weight_label, r.variant)], r.sample_id))

    summaries = []
    for key in sorted(group_rank, key=group_rank.get):
        group = [r for r in records if (r.n, r.weight_label, r.variant) == key]
        slacks = np.array([r.slack for r in group])
        summaries.append(
            GroupSummary(
                n=key[0],
                weight_label=key[1],
                variant=key[2],
                samples=len(group),
                min_slack=float(np.min(slacks)),
                mean_slack=float(np.mean(slacks)),
                violations=int(np.sum(slacks < -cfg.tolerance)),
            )
        )

    meta = {
        "rng": {"algorithm": RNG_ALGORITHM, "seed": int(cfg.seed)},
        "stream_layout": "(n << 32) | sample_id",
        "dims": [int(n) for n in cfg.dims],
        "samples": int(cfg.samples),
        "weight_specs": list(cfg.weight_specs) if cfg.weight_specs else None,
        "tolerance": float(cfg.tolerance),
        "package_version": _pkg_version,
    }
    return ScatterResult(records=records, summaries=summaries, meta=meta)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

CSV_HEADER = "n,weight_label,variant,sample_id,lhs,rhs,slack"


def _fmt(x: float) -> str:
    return format(x, ".17g")


def records_to_csv(records) -> str:
    """Render records as CSV with 17 significant digits per float."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.n},{r.weight_label},{r.variant},{r.sample_id},"
            f"{_fmt(r.lhs)},{_fmt(r.rhs)},{_fmt(r.slack)}"
        )
    return "\n".join(lines) + "\n"


def records_to_jsonable(records) -> list[dict]:
    return [
        {
            "n": r.n,
            "weight_label": r.weight_label,
            "variant": r.variant,
            "sample_id": r.sample_id,
            "lhs": r.lhs,
            "rhs": r.rhs,
            "slack": r.slack,
        }
        for r in records
    ]


def summaries_to_jsonable(summaries) -> list[dict]:
    return [
        {
            "n": s.n,
            "weight_label": s.weight_label,
            "variant": s.variant,
            "samples": s.samples,
            "min_slack": s.min_slack,
            "mean_slack": s.mean_slack,
            "violations": s.violations,
        }
        for s in summaries
    ]


def write_csv(path, records) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(records_to_csv(records))
