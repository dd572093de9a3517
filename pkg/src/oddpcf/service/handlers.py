"""Request handlers shared by the FastAPI app and the command line client."""

from __future__ import annotations

from .. import arrays, discharging, formats, generator, reducible, solver
from ..errors import Untypeable
from ..forbflex import flex_report
from ..plane_graph import PlaneGraph, girth
from . import schemas


def _load(graph: schemas.GraphInput) -> PlaneGraph:
    return formats.load_graph(graph.data, graph.format)


def faces(graph: schemas.GraphInput) -> schemas.FacesResponse:
    g = _load(graph)
    reports = []
    for f in g.faces:
        reps = arrays.parse_arrays(f.degree_walk)
        cls = arrays.face_class_total(g, f).value if reps else None
        reports.append(schemas.FaceReport(
            face=f.id, length=f.length, degree_walk=list(f.degree_walk),
            representations=sorted({r.render() for r in reps}),
            face_class=cls))
    return schemas.FacesResponse(faces=reports)


def analyze(graph: schemas.GraphInput) -> schemas.AnalyzeResponse:
    g = _load(graph)
    vertices, untypeable = [], []
    for v in range(g.vertex_count):
        try:
            rep = flex_report(g, v)
        except Untypeable:
            untypeable.append(v)
            continue
        vertices.append(schemas.VertexFlexReport(
            vertex=v, types=rep.types, scores=rep.scores,
            forb=rep.forb, flex=rep.flex))
    return schemas.AnalyzeResponse(vertices=vertices, untypeable=untypeable)


def detect(req: schemas.DetectRequest) -> schemas.DetectResponse:
    g = _load(req.graph)
    hits = reducible.detect_all(g, req.theorem)
    return schemas.DetectResponse(
        theorem=req.theorem,
        hits=[schemas.HitModel(kind=h.kind, witness=h.witness, theorem=h.theorem)
              for h in hits])


def discharge(req: schemas.DischargeRequest) -> schemas.DischargeResponse:
    g = _load(req.graph)
    report = discharging.audit(g, req.theorem)
    payload = report.to_json()
    return schemas.DischargeResponse(
        theorem=req.theorem, applicable=payload["applicable"],
        reason=payload["reason"], totals=payload["totals"],
        negatives=payload["negatives"], critical=payload["critical"],
        checklist=payload["checklist"], hits=payload["hits"])


def solve(req: schemas.SolveRequest) -> schemas.SolveResponse:
    g = _load(req.graph)
    run = solver.chi_odd(g, req.max_k) if req.mode == "odd" \
        else solver.chi_pcf(g, req.max_k)
    return schemas.SolveResponse(
        mode=req.mode, chromatic=run.value, witness=run.witness.as_dict(),
        nodes=run.nodes, wall_time=run.wall_time)


def color(req: schemas.ColorRequest) -> schemas.ColorResponse:
    g = _load(req.graph)
    trace = reducible.PeelTrace()
    phi = reducible.peel_color(g, req.theorem, allow_fallback=req.allow_fallback,
                               trace=trace)
    return schemas.ColorResponse(
        theorem=req.theorem, coloring=phi.as_dict(), trace=trace.steps,
        used_fallback=trace.used_fallback)


def gen(req: schemas.GenRequest) -> schemas.GenResponse:
    spec = generator.GeneratorSpec(skeleton=req.skeleton, girth=req.girth,
                                   policy=req.policy, seed=req.seed)
    g = generator.generate(spec)
    return schemas.GenResponse(rotation=formats.render_rotation(g),
                               vertices=g.vertex_count, edges=g.edge_count,
                               girth=girth(g))
