"""Graph phases: labelled interaction graphs of branes, and their transforms.

A phase is transformable into dimension ``n`` when its underlying graph embeds
in R^n and both label families are pushed through a (caller-supplied) label
map. Embeddability is decided exactly: always for n >= 3, by a planarity test
with a rotation-system certificate for n = 2, and by linear-forest membership
for n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional

import networkx as nx
import numpy as np

from .errors import GraphError, NotEmbeddable

ROUND_TRIP_TOL = 1e-9


def _label(values, dim: Optional[int], what: str) -> tuple:
    vec = tuple(float(v) for v in np.atleast_1d(np.asarray(values, dtype=float)))
    if dim is not None and len(vec) != dim:
        raise GraphError(f"{what} label has length {len(vec)}, expected {dim}")
    return vec


@dataclass(frozen=True)
class GraphPhase:
    vertices: tuple
    edges: tuple  # of frozenset pairs, in declaration order
    omega: dict
    Lambda: dict
    p_dim: int
    q_dim: int

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("duplicate edge")
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"self-loop at {set(e)}")
            if not e <= vs:
                raise GraphError(f"edge {sorted(map(str, e))} has an undeclared endpoint")
        if set(self.omega) != vs or set(self.Lambda) != set(self.edges):
            raise GraphError("labels must be total on vertices and edges")
        if any(len(v) != self.p_dim for v in self.omega.values()):
            raise GraphError("vertex labels must have length p_dim")
        if any(len(v) != self.q_dim for v in self.Lambda.values()):
            raise GraphError("edge labels must have length q_dim")

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(self._ends(e)) for e in self.edges)
        return g

    def _ends(self, e: frozenset) -> tuple:
        # declaration order of the endpoints keeps output stable
        a, b = sorted(e, key=self.vertices.index)
        return a, b

    def edge_list(self) -> list[tuple]:
        return [self._ends(e) for e in self.edges]

    def same_graph(self, other: "GraphPhase") -> bool:
        return set(self.vertices) == set(other.vertices) and set(self.edges) == set(other.edges)


def build_graph_phase(
    branes: Iterable[tuple[Hashable, object]],
    interactions: Iterable[tuple[Hashable, Hashable, object]],
) -> GraphPhase:
    """Vertices from ``(id, normal vector)`` pairs, edges from ``(a, b, force)`` triples."""
    branes = list(branes)
    interactions = list(interactions)
    ids = [b[0] for b in branes]
    seen = set()
    for i in ids:
        if i in seen:
            raise GraphError(f"duplicate brane id {i!r}")
        seen.add(i)
    p_dim = len(_label(branes[0][1], None, "vertex")) if branes else 0
    q_dim = len(_label(interactions[0][2], None, "edge")) if interactions else 0
    omega = {i: _label(v, p_dim, "vertex") for i, v in branes}
    edges, Lambda = [], {}
    for a, b, force in interactions:
        if a not in seen or b not in seen:
            raise GraphError(f"interaction ({a!r}, {b!r}) names an undeclared brane")
        if a == b:
            raise GraphError(f"self-interaction at {a!r}")
        e = frozenset((a, b))
        if e in Lambda:
            raise GraphError(f"duplicate interaction between {a!r} and {b!r}")
        edges.append(e)
        Lambda[e] = _label(force, q_dim, "edge")
    return GraphPhase(tuple(ids), tuple(edges), omega, Lambda, p_dim, q_dim)


# --------------------------------------------------------------------------
# embeddability


@dataclass(frozen=True)
class EmbeddingVerdict:
    embeddable: bool
    dimension: int
    witness: Optional[dict] = None  # vertex -> neighbours in clockwise order
    obstruction: Optional[list] = None  # edge list of the obstructing subgraph
    obstruction_kind: Optional[str] = None


def count_faces(rotation: dict) -> int:
    """Number of face boundary walks of a rotation system."""
    succ = {}
    for v, nbrs in rotation.items():
        for i, w in enumerate(nbrs):
            succ[(v, w)] = nbrs[(i + 1) % len(nbrs)]
    unseen = {(v, w) for v, nbrs in rotation.items() for w in nbrs}
    faces = 0
    while unseen:
        start = dart = unseen.pop()
        while True:
            v, w = dart
            dart = (w, succ[(w, v)])
            if dart == start:
                break
            unseen.discard(dart)
        faces += 1
    return faces


def euler_characteristics(rotation: dict) -> list[int]:
    """``V - E + F`` for each connected component of a rotation system."""
    g = nx.Graph()
    g.add_nodes_from(rotation)
    g.add_edges_from((v, w) for v, nbrs in rotation.items() for w in nbrs)
    out = []
    for comp in nx.connected_components(g):
        sub = {v: rotation[v] for v in comp}
        e = sum(len(n) for n in sub.values()) // 2
        f = count_faces(sub) if e else 1
        out.append(len(comp) - e + f)
    return out


def _kuratowski_kind(edges: list[tuple]) -> str:
    deg = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    branch = sum(1 for d in deg.values() if d >= 3)
    return "K5" if branch == 5 else "K3,3"


def is_linear_forest(g: nx.Graph) -> bool:
    return all(d <= 2 for _, d in g.degree()) and nx.is_forest(g)


def is_embeddable(phase: GraphPhase, n: int) -> EmbeddingVerdict:
    if n < 1:
        raise GraphError("target dimension must be >= 1")
    g = phase.to_networkx()
    if n >= 3:
        return EmbeddingVerdict(True, n)
    if n == 1:
        if is_linear_forest(g):
            return EmbeddingVerdict(True, 1)
        hub = next((v for v, d in g.degree() if d >= 3), None)
        if hub is not None:
            star = [(hub, w) for w in list(g.neighbors(hub))[:3]]
            return EmbeddingVerdict(False, 1, obstruction=star, obstruction_kind="K1,3")
        cycle = [(a, b) for a, b in nx.find_cycle(g)]
        return EmbeddingVerdict(False, 1, obstruction=cycle, obstruction_kind="cycle")
    planar, cert = nx.check_planarity(g, counterexample=True)
    if planar:
        rotation = {v: list(nbrs) for v, nbrs in cert.get_data().items()}
        for v in g.nodes:
            rotation.setdefault(v, [])
        return EmbeddingVerdict(True, 2, witness=rotation)
    edges = [tuple(e) for e in cert.edges()]
    return EmbeddingVerdict(False, 2, obstruction=edges, obstruction_kind=_kuratowski_kind(edges))


# --------------------------------------------------------------------------
# transforms


@dataclass(frozen=True)
class LabelTransform:
    tau_omega: Callable
    tau_lambda: Callable

    @classmethod
    def identity(cls) -> "LabelTransform":
        return cls(lambda x: x, lambda x: x)

    @classmethod
    def affine(cls, omega_scale=1.0, omega_shift=0.0, lambda_scale=1.0, lambda_shift=0.0):
        return cls(
            lambda x: np.asarray(x) * omega_scale + omega_shift,
            lambda x: np.asarray(x) * lambda_scale + lambda_shift,
        )

    def then(self, other: "LabelTransform") -> "LabelTransform":
        """Apply ``self`` first, then ``other``."""
        return LabelTransform(
            lambda x: other.tau_omega(self.tau_omega(x)),
            lambda x: other.tau_lambda(self.tau_lambda(x)),
        )


def transform_phase(phase: GraphPhase, tau: LabelTransform, n: int) -> GraphPhase:
    """Push the labels through ``tau`` once the graph is known to embed in R^n."""
    verdict = is_embeddable(phase, n)
    if not verdict.embeddable:
        raise NotEmbeddable(
            f"graph does not embed in R^{n} ({verdict.obstruction_kind} obstruction)",
            obstruction=verdict.obstruction,
        )
    omega = {v: _label(tau.tau_omega(np.array(x)), None, "vertex") for v, x in phase.omega.items()}
    Lambda = {e: _label(tau.tau_lambda(np.array(x)), None, "edge") for e, x in phase.Lambda.items()}
    p_dim = len(next(iter(omega.values()))) if omega else phase.p_dim
    q_dim = len(next(iter(Lambda.values()))) if Lambda else phase.q_dim
    return GraphPhase(phase.vertices, phase.edges, omega, Lambda, p_dim, q_dim)


def labels_close(a: GraphPhase, b: GraphPhase, tol: float = ROUND_TRIP_TOL) -> bool:
    if not a.same_graph(b) or a.p_dim != b.p_dim or a.q_dim != b.q_dim:
        return False
    pairs = [(a.omega[v], b.omega[v]) for v in a.vertices] + [(a.Lambda[e], b.Lambda[e]) for e in a.edges]
    return all(np.allclose(x, y, rtol=0.0, atol=tol) for x, y in pairs)


def round_trip_check(phase: GraphPhase, tau: LabelTransform, tau_inverse: LabelTransform, n: int) -> bool:
    back = transform_phase(transform_phase(phase, tau, n), tau_inverse, n)
    return labels_close(phase, back)
