"""Service endpoints and their in-process handlers.

Each handler is a plain function from a request model to a response
model; the FastAPI routes are thin wrappers, and the CLI calls the
same handlers directly when no server address is given, so both
transports exercise identical logic.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..chains import Region, chain_from_json, default_region, enumerate_region
from ..covering import (
    DEFAULT_NODE_BUDGET,
    GroupSubset,
    cov_bounds,
    cov_exact,
    cov_greedy,
    difference_set,
    subset_from_json,
)
from ..errors import ConfigInvalid, CovlabError
from ..experiments import emit_report, run_experiment
from ..factorization import factorize, separation_witness, verify_separation
from ..groups import OrdinalSumGroup, build_group, element_from_json, element_to_json
from ..ordinals import Ordinal
from ..phi import phi_exhaustive, phi_random_search
from ..support_partition import SupportPartition, support_witness, verify_support_witness
from .schemas import (
    CellsRequest,
    CellsResponse,
    ChainWitnessRequest,
    ChainWitnessResponse,
    CovRequest,
    CovResponse,
    ErrorResponse,
    FactorizeRequest,
    FactorizeResponse,
    HealthResponse,
    PhiRequest,
    PhiResponse,
    ReportRequest,
    ReportResponse,
    SupportCellsRequest,
    SupportCellsResponse,
    SupportWitnessRequest,
    SupportWitnessResponse,
    TowerRequest,
    ValidateRequest,
    ValidateResponse,
)

__all__ = [
    "create_app",
    "handle_validate",
    "handle_cov",
    "handle_factorize",
    "handle_cells",
    "handle_chain_witness",
    "handle_support_cells",
    "handle_support_witness",
    "handle_phi",
    "handle_tower",
    "handle_report",
]


def _chain_for(G, chain_doc: dict | None):
    return chain_from_json(G, chain_doc if chain_doc is not None else {"labels": "auto"})


def _region_for(chain, offset_bound: int, max_support: int | None) -> Region | None:
    if chain.is_finite:
        return None
    return default_region(chain, offset_bound=offset_bound, max_support=max_support)


def handle_validate(req: ValidateRequest) -> ValidateResponse:
    G = build_group(req.group)
    return ValidateResponse(ok=True, kind=G.kind, order=G.order, label=G.label)


def handle_cov(req: CovRequest) -> CovResponse:
    G = build_group(req.group)
    A = subset_from_json(G, req.set)
    if req.mode == "bounds":
        lo, hi = cov_bounds(A)
        return CovResponse(method="bounds", lower=lo, upper=hi)
    if req.mode == "greedy":
        res = cov_greedy(A)
    else:
        res = cov_exact(
            A,
            budget=req.budget if req.budget is not None else DEFAULT_NODE_BUDGET,
            canonical=req.canonical,
        )
    return CovResponse(
        value=res.value,
        method=res.method,
        witness=[element_to_json(G, x) for x in res.witness],
        nodes_explored=res.nodes_explored,
        proven_optimal=res.proven_optimal,
    )


def handle_factorize(req: FactorizeRequest) -> FactorizeResponse:
    G = build_group(req.group)
    chain = _chain_for(G, req.chain)
    g = element_from_json(G, req.element)
    f = factorize(g, chain)
    return FactorizeResponse(
        element=element_to_json(G, g),
        factors=f.to_json(G),
        label=[o.offset for o in f.ordinals()],
    )


def handle_cells(req: CellsRequest) -> CellsResponse:
    G = build_group(req.group)
    chain = _chain_for(G, req.chain)
    region = _region_for(chain, req.offset_bound, req.max_support)
    members = enumerate_region(chain, region)
    cells: dict[tuple, list] = {}
    for g in members:
        s = tuple(o.offset for o in factorize(g, chain).ordinals())
        cells.setdefault(s, []).append(g)
    rows = []
    for s in sorted(cells, key=lambda t: (len(t), t)):
        row = {"label": list(s), "size": len(cells[s])}
        if req.include_members:
            row["members"] = [element_to_json(G, g) for g in cells[s]]
        rows.append(row)
    return CellsResponse(region_size=len(members), cells=rows)


def handle_chain_witness(req: ChainWitnessRequest) -> ChainWitnessResponse:
    G = build_group(req.group)
    chain = _chain_for(G, req.chain)
    region = _region_for(chain, req.offset_bound, req.max_support)
    K = [element_from_json(G, v) for v in req.k]
    s = tuple(req.s)
    h = separation_witness(K, s, chain)
    report = verify_separation(K, s, h, chain, region, threads=req.threads)
    return ChainWitnessResponse(h=element_to_json(G, h), report=report.to_json(G))


def handle_support_cells(req: SupportCellsRequest) -> SupportCellsResponse:
    G = build_group(req.group)
    part = SupportPartition(G)
    if part.positions is None:
        raise ConfigInvalid("per-cell cover rows need a finite product group")
    max_n = req.max_n if req.max_n is not None else min(3, part.positions)
    budget = req.budget if req.budget is not None else DEFAULT_NODE_BUDGET
    rows = []
    for n in range(max_n + 1):
        cell = part.cell(n)
        row: dict = {"n": n, "cell_size": len(cell)}
        if cell:
            diff = difference_set(GroupSubset.from_elements(G, cell))
            lo, hi = cov_bounds(diff)
            row["diffset_size"] = diff.size
            row["cov_lower"] = lo
            row["cov_upper"] = hi
            if req.cov_per_cell:
                res = cov_exact(diff, budget=budget)
                row["cov_exact"] = res.value
                row["proven_optimal"] = res.proven_optimal
        rows.append(row)
    return SupportCellsResponse(rows=rows)


def handle_support_witness(req: SupportWitnessRequest) -> SupportWitnessResponse:
    G = build_group(req.group)
    K = [element_from_json(G, v) for v in req.k]
    h = support_witness(G, K, req.n)
    region = None
    if isinstance(G, OrdinalSumGroup):
        positions = tuple(
            Ordinal(q, n) for q in range(G.blocks) for n in range(req.offset_bound)
        )
        region = Region(positions, req.max_support)
    report = verify_support_witness(G, K, req.n, h, region, threads=req.threads)
    return SupportWitnessResponse(h=element_to_json(G, h), report=report.to_json(G))


def handle_phi(req: PhiRequest) -> PhiResponse:
    G = build_group(req.group)
    if req.mode == "exhaustive":
        report = phi_exhaustive(G, req.n, budget=req.budget)
    else:
        if req.seed is None:
            raise ConfigInvalid("random phi search needs a seed")
        report = phi_random_search(G, req.n, iterations=req.iterations, seed=req.seed)
    return PhiResponse(**report.to_json(G))


def handle_tower(req: TowerRequest) -> ReportResponse:
    cfg = {
        "experiment": "tower",
        "family": req.family,
        "n_values": req.n_values,
        "timing": req.timing,
    }
    if req.budget is not None:
        cfg["budget"] = req.budget
    rows = list(run_experiment(cfg))
    return ReportResponse(
        rows=[r.to_json() for r in rows],
        text=emit_report(rows, "csv", None, allow_empty=True),
    )


def handle_report(req: ReportRequest) -> ReportResponse:
    rows = list(run_experiment(req.config))
    return ReportResponse(
        rows=[r.to_json() for r in rows],
        text=emit_report(rows, req.format, None, allow_empty=True),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="covlab", version=__version__)

    @app.exception_handler(CovlabError)
    async def covlab_error(_, exc: CovlabError):
        status = 400 if exc.exit_code == 1 else 422
        payload = ErrorResponse(
            error=type(exc).__name__, message=str(exc), exit_code=exc.exit_code
        )
        return JSONResponse(status_code=status, content=payload.model_dump())

    @app.get("/health", response_model=HealthResponse)
    async def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/validate", response_model=ValidateResponse)
    async def validate(req: ValidateRequest):
        return handle_validate(req)

    @app.post("/cov", response_model=CovResponse, response_model_exclude_none=True)
    async def cov(req: CovRequest):
        return handle_cov(req)

    @app.post("/theorem1/factorize", response_model=FactorizeResponse)
    async def theorem1_factorize(req: FactorizeRequest):
        return handle_factorize(req)

    @app.post("/theorem1/cells", response_model=CellsResponse)
    async def theorem1_cells(req: CellsRequest):
        return handle_cells(req)

    @app.post("/theorem1/witness", response_model=ChainWitnessResponse)
    async def theorem1_witness(req: ChainWitnessRequest):
        return handle_chain_witness(req)

    @app.post("/theorem2/cells", response_model=SupportCellsResponse)
    async def theorem2_cells(req: SupportCellsRequest):
        return handle_support_cells(req)

    @app.post("/theorem2/witness", response_model=SupportWitnessResponse)
    async def theorem2_witness(req: SupportWitnessRequest):
        return handle_support_witness(req)

    @app.post("/theorem2/cov-per-cell", response_model=SupportCellsResponse)
    async def theorem2_cov_per_cell(req: SupportCellsRequest):
        forced = req.model_copy(update={"cov_per_cell": True})
        return handle_support_cells(forced)

    @app.post("/phi", response_model=PhiResponse)
    async def phi(req: PhiRequest):
        return handle_phi(req)

    @app.post("/tower", response_model=ReportResponse)
    async def tower(req: TowerRequest):
        return handle_tower(req)

    @app.post("/report", response_model=ReportResponse)
    async def report(req: ReportRequest):
        return handle_report(req)

    return app
