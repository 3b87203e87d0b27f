"""Request handlers: the single implementation behind HTTP routes and the CLI.

Each handler maps a request model to a response model using the core
package only; no transport concerns live here, so the CLI can call these
directly and a server deployment wires them to routes.
"""

from __future__ import annotations

import io

import numpy as np

from .. import oracle, prox, sparsity
from ..basis import build_sampling_matrix
from ..experiments import (
    DenoiseConfig,
    MethodSpec,
    RecoveryConfig,
    run_denoise,
    run_recovery,
)
from ..quadrature import gauss_legendre, verify_exactness
from ..reports import curves_csv, curves_svg, report_csv
from . import schemas

__all__ = [
    "handle_quad",
    "handle_prox",
    "handle_sparsity",
    "handle_flip_bounds",
    "handle_bernstein_bounds",
    "handle_recover",
    "handle_denoise",
]


def handle_quad(req: schemas.QuadRequest) -> schemas.QuadResponse:
    rule = gauss_legendre(req.points)
    defect = None
    if req.verify_degree is not None:
        defect = verify_exactness(rule, req.verify_degree)
    matrix_csv = None
    if req.matrix_degree is not None:
        entries = build_sampling_matrix(rule, req.matrix_degree).entries
        buffer = io.StringIO()
        np.savetxt(buffer, entries, delimiter=",", fmt="%.17g")
        matrix_csv = buffer.getvalue()
    return schemas.QuadResponse(
        points=req.points,
        exactness=rule.declared_exactness,
        nodes=rule.nodes.tolist(),
        weights=rule.weights.tolist(),
        defect=defect,
        matrix_csv=matrix_csv,
    )


def handle_prox(req: schemas.ProxRequest) -> schemas.ProxResponse:
    threshold = None
    iterations = None
    if req.op == "hard":
        value = prox.hard(req.y, req.lam)
        oracle_name, kwargs = "l0", {}
    elif req.op == "soft":
        value = prox.soft(req.y, req.lam)
        oracle_name, kwargs = "l1", {}
    elif req.op == "springback":
        if req.alpha is None:
            raise ValueError("springback needs alpha")
        value = prox.springback(req.y, req.lam, req.alpha)
        oracle_name, kwargs = "springback", {"alpha": req.alpha}
    else:
        if req.q is None:
            raise ValueError("lq needs q")
        value, iterations = prox.lq_prox_info(req.y, req.lam, req.q)
        threshold = prox.newton_threshold_a(req.lam, req.q)
        oracle_name, kwargs = "lq", {"q": req.q}
    oracle_value = None
    oracle_gap = None
    if req.verify:
        oracle_value = oracle.grid_argmin_scalar(oracle_name, req.y, req.lam, **kwargs)
        oracle_gap = abs(oracle_value - value)
    return schemas.ProxResponse(
        value=value,
        threshold=threshold,
        iterations=iterations,
        oracle_value=oracle_value,
        oracle_gap=oracle_gap,
    )


def handle_sparsity(req: schemas.SparsityRequest) -> schemas.SparsityResponse:
    alpha = np.asarray(req.coefficients, dtype=float)
    cert = sparsity.certificate_for_sparsity(alpha, req.q, req.k)
    rule = prox.ThresholdRule.newton_lq(max(cert.lambda_chosen, 1e-300), req.q)
    support = int(np.count_nonzero(prox.apply_vector(rule, alpha)))
    return schemas.SparsityResponse(
        u_k=cert.lambda_chosen,
        lam=cert.lambda_chosen,
        support_size=support,
        guaranteed_bound=cert.guaranteed_support_bound,
    )


def _bounds_response(check: str, reports, trials: int, seed: int) -> schemas.BoundsResponse:
    points = [
        schemas.BoundPoint(
            parameter=r.parameter,
            analytic_bound=r.analytic_bound,
            empirical_rate=r.empirical_rate,
            within_slack=r.within_slack,
        )
        for r in reports
    ]
    lines = ["parameter,analytic_bound,empirical_rate,within_slack"]
    for p in points:
        lines.append(
            f"{p.parameter:.12g},{p.analytic_bound:.12g},{p.empirical_rate:.12g},{int(p.within_slack)}"
        )
    return schemas.BoundsResponse(
        check=check, trials=trials, seed=seed, points=points, csv="\n".join(lines) + "\n"
    )


def handle_flip_bounds(req: schemas.FlipBoundsRequest) -> schemas.BoundsResponse:
    reports = sparsity.flip_bound_experiment(
        req.gaps, sigma=req.sigma, lam=req.lam, trials=req.trials, seed=req.seed
    )
    return _bounds_response("flip", reports, req.trials, req.seed)


def handle_bernstein_bounds(req: schemas.BernsteinBoundsRequest) -> schemas.BoundsResponse:
    reports = sparsity.bernstein_experiment(
        req.k, req.dim, req.t_values, trials=req.trials, seed=req.seed
    )
    return _bounds_response("bernstein", reports, req.trials, req.seed)


def _method_specs(models: list[schemas.MethodModel] | None) -> list[MethodSpec] | None:
    if models is None:
        return None
    return [
        MethodSpec(kind=m.kind, q=m.q, alpha=m.alpha, fixed_lam=m.fixed_lam, label=m.label)
        for m in models
    ]


def _row_models(report) -> list[schemas.MetricsRowModel]:
    return [
        schemas.MetricsRowModel(
            method=row.method_label,
            l2_error=row.l2_error,
            max_error=row.max_error,
            aisnr_db=row.aisnr_db,
            trials=row.trials,
        )
        for row in report.rows
    ]


def handle_recover(req: schemas.RecoverRequest) -> schemas.RecoverResponse:
    kwargs = dict(
        points=req.points,
        dim=req.dim,
        sparsity=req.sparsity,
        sigma=req.sigma,
        trials=req.trials,
        seed=req.seed,
        top_k_retention=req.top_k_retention,
        fresh_signal_per_trial=req.fresh_signal_per_trial,
    )
    methods = _method_specs(req.methods)
    if methods is not None:
        kwargs["methods"] = tuple(methods)
    config = RecoveryConfig(**kwargs)
    report = run_recovery(config, workers=req.workers)
    return schemas.RecoverResponse(
        rows=_row_models(report),
        mean_input_snr_db=report.mean_input_snr_db,
        failures=report.failures,
        runtime_seconds=report.runtime_seconds,
        csv=report_csv(report),
    )


def handle_denoise(req: schemas.DenoiseRequest) -> schemas.DenoiseResponse:
    kwargs = dict(
        points=req.points,
        dim=req.dim,
        sigma=req.sigma,
        impulse=req.impulse,
        retain_k=req.retain_k,
        seed=req.seed,
        grid_points=req.grid_points,
    )
    methods = _method_specs(req.methods)
    if methods is not None:
        kwargs["methods"] = tuple(methods)
    config = DenoiseConfig(**kwargs)
    report, curves = run_denoise(config)
    return schemas.DenoiseResponse(
        rows=_row_models(report),
        mean_input_snr_db=report.mean_input_snr_db,
        failures=report.failures,
        runtime_seconds=report.runtime_seconds,
        metrics_csv=report_csv(report),
        curves_csv=curves_csv(curves) if req.include_curves else None,
        svg=curves_svg(curves) if req.include_svg else None,
    )
