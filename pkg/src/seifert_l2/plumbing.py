"""Graph manifolds as plumbing graphs of Seifert pieces.

Nodes carry Seifert invariants; an edge glues one boundary torus to
another through a unimodular 2x2 integer matrix acting on (section,
fiber) bases.  First homology of the glued manifold is presented by all
node generators, one extra free generator per edge outside a spanning
tree (the abelianized HNN letter of the graph-of-groups description),
and two relations per edge identifying the torus bases.  The Thurston
norm is the sum of the piece norms of the restricted classes, and the
torsion is the product of the piece torsions, the gluing tori themselves
contributing trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExclusionError, HypothesisError, ValidationError
from .exact_algebra import (
    AbelianPresentation,
    IntMatrix,
    class_image_order,
    cokernel_structure,
)
from .norm import (
    CohomologyClass,
    NormResult,
    require_valid_class,
    sfs_torsion,
    thurston_norm_sfs,
    valid_class_basis,
)
from .seifert import (
    SeifertInvariants,
    abelianized_presentation,
    boundary_generator_index,
    chi_orb,
    exclusion_report,
    fiber_generator_index,
    generator_names,
)
from .torsion import TorsionFunction

GluingMatrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class Edge:
    """Gluing of boundary slot_a of node_a to slot_b of node_b.

    The matrix expresses the (section, fiber) basis of the node_b torus
    in terms of the node_a one: d_b = A11 d_a + A12 h_a and
    h_b = A21 d_a + A22 h_a.  It must be unimodular.
    """

    node_a: int
    slot_a: int
    node_b: int
    slot_b: int
    matrix: GluingMatrix

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(m) != 2 or any(len(r) != 2 for r in m):
            raise ValidationError("gluing matrix must be 2x2")
        object.__setattr__(self, "matrix", m)
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det not in (1, -1):
            raise ValidationError(f"gluing matrix has determinant {det}, need +-1")


@dataclass(frozen=True)
class PlumbingGraph:
    nodes: tuple[SeifertInvariants, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.nodes:
            raise ValidationError("plumbing graph needs at least one node")
        used: set[tuple[int, int]] = set()
        for e in self.edges:
            for node, slot in ((e.node_a, e.slot_a), (e.node_b, e.slot_b)):
                if not (0 <= node < len(self.nodes)):
                    raise ValidationError(f"edge references missing node {node}")
                if not (0 <= slot < self.nodes[node].boundary_count):
                    raise ValidationError(
                        f"node {node} has no boundary slot {slot}"
                    )
                if (node, slot) in used:
                    raise ValidationError(f"boundary slot {(node, slot)} used twice")
                used.add((node, slot))
        if not self._connected():
            raise ValidationError("plumbing graph must be connected")

    def _connected(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for e in self.edges:
                for a, b in ((e.node_a, e.node_b), (e.node_b, e.node_a)):
                    if a == v and b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return len(seen) == len(self.nodes)


@dataclass(frozen=True)
class AssembledManifold:
    """Amalgamated H1 presentation of the glued manifold."""

    presentation: AbelianPresentation
    node_offsets: tuple[int, ...]
    cycle_offset: int
    warnings: tuple[str, ...]

    def node_range(self, v: int, G: PlumbingGraph) -> range:
        start = self.node_offsets[v]
        return range(start, start + len(generator_names(G.nodes[v])))

    def fiber_index(self, v: int, G: PlumbingGraph) -> int:
        return self.node_offsets[v] + fiber_generator_index(G.nodes[v])


def _spanning_tree_flags(G: PlumbingGraph) -> list[bool]:
    """True per edge when it joins two previously disconnected nodes."""
    parent = list(range(len(G.nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    flags = []
    for e in G.edges:
        ra, rb = find(e.node_a), find(e.node_b)
        if ra == rb:
            flags.append(False)
        else:
            parent[ra] = rb
            flags.append(True)
    return flags


def assemble(G: PlumbingGraph) -> AssembledManifold:
    """Build the amalgamated abelian presentation of the graph manifold."""
    for v, S in enumerate(G.nodes):
        report = exclusion_report(S)
        if report.excluded is not None:
            raise ExclusionError(f"node {v} is excluded: {report.excluded}")

    warnings = []
    for idx, e in enumerate(G.edges):
        m = e.matrix
        if m in (((1, 0), (0, 1)), ((-1, 0), (0, -1))):
            warnings.append(
                f"edge {idx} glues fiber to fiber with matrix +-identity; the "
                "gluing torus may be compressible or the pieces may merge "
                "into one Seifert piece"
            )

    names: list[str] = []
    offsets: list[int] = []
    for v, S in enumerate(G.nodes):
        offsets.append(len(names))
        names += [f"n{v}.{g}" for g in generator_names(S)]
    cycle_offset = len(names)
    tree = _spanning_tree_flags(G)
    cycle_index = {}
    for idx, is_tree in enumerate(tree):
        if not is_tree:
            cycle_index[idx] = len(names)
            names.append(f"c{idx}")

    total = len(names)
    rows: list[list[int]] = []
    for v, S in enumerate(G.nodes):
        P = abelianized_presentation(S)
        for i in range(P.relations.rows):
            row = [0] * total
            for j, c in enumerate(P.relations.row(i)):
                row[offsets[v] + j] = c
            rows.append(row)
    for e in G.edges:
        a_d = offsets[e.node_a] + boundary_generator_index(G.nodes[e.node_a], e.slot_a)
        a_h = offsets[e.node_a] + fiber_generator_index(G.nodes[e.node_a])
        b_d = offsets[e.node_b] + boundary_generator_index(G.nodes[e.node_b], e.slot_b)
        b_h = offsets[e.node_b] + fiber_generator_index(G.nodes[e.node_b])
        (a11, a12), (a21, a22) = e.matrix
        # Accumulate: on a self-loop edge the two fiber generators coincide.
        row = [0] * total
        row[a_d] += a11
        row[a_h] += a12
        row[b_d] -= 1
        rows.append(row)
        row = [0] * total
        row[a_d] += a21
        row[a_h] += a22
        row[b_h] -= 1
        rows.append(row)

    relations = IntMatrix.from_rows(rows) if rows else IntMatrix(0, total, ())
    return AssembledManifold(
        presentation=AbelianPresentation(tuple(names), relations),
        node_offsets=tuple(offsets),
        cycle_offset=cycle_offset,
        warnings=tuple(warnings),
    )


def restrict(G: PlumbingGraph, phi: CohomologyClass, v: int) -> CohomologyClass:
    """Restriction of a class on the glued manifold to one piece."""
    asm = assemble(G)
    require_valid_class(asm.presentation, phi)
    rng = asm.node_range(v, G)
    return CohomologyClass(tuple(phi.values[i] for i in rng))


def node_norms(G: PlumbingGraph, phi: CohomologyClass) -> list[NormResult]:
    asm = assemble(G)
    require_valid_class(asm.presentation, phi)
    results = []
    for v, S in enumerate(G.nodes):
        piece = CohomologyClass(tuple(phi.values[i] for i in asm.node_range(v, G)))
        try:
            results.append(thurston_norm_sfs(S, piece))
        except (ValidationError, HypothesisError) as exc:
            raise type(exc)(f"node {v}: {exc}") from exc
    return results


def graph_norm(G: PlumbingGraph, phi: CohomologyClass) -> Fraction:
    """Thurston norm of the graph manifold: sum of the piece norms."""
    return sum((r.norm for r in node_norms(G, phi)), Fraction(0))


def graph_torsion(
    G: PlumbingGraph, phi: CohomologyClass, assert_hypothesis: bool = False
) -> TorsionFunction:
    """Torsion of the graph manifold: product of the piece torsions.

    Each piece must have its fiber of infinite order in the homology of
    the glued manifold (not only of the piece), unless asserted.
    """
    asm = assemble(G)
    require_valid_class(asm.presentation, phi)
    total = TorsionFunction.unit()
    for v, S in enumerate(G.nodes):
        if not assert_hypothesis:
            order = class_image_order(asm.presentation, asm.fiber_index(v, G))
            if order is not None:
                raise HypothesisError(
                    f"fiber of node {v} has finite order {order} in the "
                    "assembled H1; pass assert_hypothesis=True to assert "
                    "infinite order under a finer homomorphism",
                    fiber_order=order,
                )
        piece = CohomologyClass(tuple(phi.values[i] for i in asm.node_range(v, G)))
        total = total.mul(sfs_torsion(S, piece, assert_hypothesis=True))
    return total


def double(S: SeifertInvariants) -> PlumbingGraph:
    """Double of a piece with boundary along all its boundary tori.

    The second copy carries the mirrored invariants (slopes negated) and
    each slot pair is glued fiber-to-fiber by diag(1, -1); this realizes
    the orientation-reversing identification of the topological double.
    """
    if S.boundary_count < 1:
        raise ValidationError("can only double a manifold with boundary")
    mirror = S.mirrored()
    edges = tuple(
        Edge(0, slot, 1, slot, ((1, 0), (0, -1)))
        for slot in range(S.boundary_count)
    )
    return PlumbingGraph((S, mirror), edges)


def klein_piece(exceptional) -> SeifertInvariants:
    """Seifert piece over the Klein bottle with two boundary circles."""
    return SeifertInvariants(False, 2, 2, tuple(exceptional))


@dataclass(frozen=True)
class KleinCutReport:
    """Cutting the Klein-bottle-base piece along two vertical tori.

    The two cut pieces have orientable bases (a 4-holed and a 2-holed
    sphere); one re-gluing edge carries the fiber flip that encodes the
    crosscap monodromy.
    """

    whole: SeifertInvariants
    pieces: tuple[SeifertInvariants, SeifertInvariants]
    chi_whole: Fraction
    chi_pieces: tuple[Fraction, Fraction]
    chi_additive: bool
    h1_whole: tuple[int, list[int]]
    h1_reassembled: tuple[int, list[int]]
    h1_match: bool
    norms_whole: tuple[Fraction, ...]
    norms_graph: tuple[Fraction, ...]
    norm_additive: bool
    torsion_multiplicative: bool
    hypothesis_overridden: bool

    @property
    def passed(self) -> bool:
        return (
            self.chi_additive
            and self.h1_match
            and self.norm_additive
            and self.torsion_multiplicative
        )


def cut_check_klein(exceptional) -> KleinCutReport:
    """Verify the cut of the Klein-bottle-base piece against its pieces.

    Checks chi_orb additivity, equality of H1 of the piece with H1 of the
    re-glued pair, norm additivity over a spanning set of classes, and
    multiplicativity of the torsion with unit torus factors.
    """
    whole = klein_piece(exceptional)
    exc = tuple(exceptional)
    piece_main = SeifertInvariants(True, 0, 4, exc)
    piece_strip = SeifertInvariants(True, 0, 2, ())
    graph = PlumbingGraph(
        (piece_main, piece_strip),
        (
            Edge(0, 2, 1, 0, ((1, 0), (0, 1))),
            Edge(0, 3, 1, 1, ((1, 0), (0, -1))),
        ),
    )

    chi_w = chi_orb(whole)
    chi_p = (chi_orb(piece_main), chi_orb(piece_strip))
    asm = assemble(graph)
    h1_w = abelianized_presentation(whole).cokernel()
    h1_g = cokernel_structure(asm.presentation.relations)

    norms_whole = tuple(
        thurston_norm_sfs(whole, phi).norm
        for phi in valid_class_basis(abelianized_presentation(whole))
    )
    graph_classes = valid_class_basis(asm.presentation)
    norms_graph = tuple(graph_norm(graph, phi) for phi in graph_classes)

    # The fiber is 2-torsion in H1 on both sides, so the torsion formula
    # needs the asserted hypothesis; every class then yields the unit.
    torsion_ok = True
    for phi in graph_classes:
        glued = graph_torsion(graph, phi, assert_hypothesis=True)
        pieces = [
            sfs_torsion(S, restrict(graph, phi, v), assert_hypothesis=True)
            for v, S in enumerate(graph.nodes)
        ]
        tori = TorsionFunction.unit().mul(TorsionFunction.unit())
        if not glued.mul(tori).eq(pieces[0].mul(pieces[1])):
            torsion_ok = False

    return KleinCutReport(
        whole=whole,
        pieces=(piece_main, piece_strip),
        chi_whole=chi_w,
        chi_pieces=chi_p,
        chi_additive=chi_w == chi_p[0] + chi_p[1],
        h1_whole=h1_w,
        h1_reassembled=h1_g,
        h1_match=h1_w == h1_g,
        norms_whole=norms_whole,
        norms_graph=norms_graph,
        # The fiber class is torsion on both sides, so every rational class
        # has k = 0 and both sides of the additivity identity must vanish.
        norm_additive=all(x == 0 for x in norms_whole)
        and all(x == 0 for x in norms_graph),
        torsion_multiplicative=torsion_ok,
        hypothesis_overridden=True,
    )
