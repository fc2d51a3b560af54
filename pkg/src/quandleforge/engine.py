"""Trace-and-collapse enumeration of N-quandle Cayley graphs.

Given an expanded presentation, the engine builds the Cayley graph of the
quandle: one vertex per element, and for each generator g a bijection
sending x to x acted on by g.  The construction follows Winker's method:

1. start with one vertex per generator,
2. add a g-labeled loop at the vertex of g (idempotence),
3. trace each primary relation x_j^w = x_k as a path from the vertex of
   x_j forced to end at the vertex of x_k, creating vertices as needed
   and collapsing fully after each relation,
4. collapsing identifies same-labeled edges into or out of a shared
   vertex, cascading until every action is single-valued,
5. sweep the vertices in creation order, tracing every universal relation
   as a closed loop at each live vertex (collapsing after each trace).

Late merges can fold edges into a vertex that was already swept, so the
sweep keeps a dirty set: any vertex whose edge set changes after it was
processed is queued for re-tracing.  Enumeration finishes when the sweep
pointer is exhausted and the dirty set is empty; it aborts with a
limit-exceeded report when the vertex or step budget runs out, which is
the only possible outcome for an infinite quandle.

Everything is deterministic: identical inputs give identical numberings.
Coincidence processing keeps the lower-numbered vertex as representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .presentation import Presentation
from .words import GroupWord, QuandleExpr


DEFAULT_MAX_VERTICES = 1_000_000
DEFAULT_MAX_STEPS = 1_000_000_000


@dataclass(frozen=True)
class EnumerationLimits:
    """Budget for a single enumeration; both counts must be positive."""

    max_vertices: int = DEFAULT_MAX_VERTICES
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_steps < 1:
            raise ValueError("enumeration limits must be positive")


@dataclass
class EnumerationStats:
    vertices_created: int = 0
    merges: int = 0
    relations_traced: int = 0
    steps: int = 0
    live: int = 0

    def as_dict(self) -> dict:
        return {
            "vertices_created": self.vertices_created,
            "merges": self.merges,
            "relations_traced": self.relations_traced,
            "steps": self.steps,
            "live": self.live,
        }


@dataclass
class EnumerationResult:
    """Outcome of an enumeration: 'completed' with a graph, or 'limit-exceeded'."""

    outcome: str
    graph: "CayleyGraph | None"
    stats: EnumerationStats

    @property
    def completed(self) -> bool:
        return self.outcome == "completed"


class _LimitHit(Exception):
    pass


class CayleyGraph:
    """The (possibly partial) Cayley graph of a quandle presentation.

    Per generator, ``fwd`` and ``bwd`` hold a partial bijection on
    vertices and its inverse, kept mutually consistent; -1 marks an
    undefined image.  Merged vertices stay in the tables but are marked
    dead, with ``parent`` the union-find structure mapping them to their
    representative; stored vertex ids must be resolved through
    :meth:`find` when read.  In a completed graph every action is total
    on live vertices and the vertex of each generator carries a loop
    under that generator.
    """

    def __init__(self, pres: Presentation, limits: EnumerationLimits):
        self.pres = pres
        self.gens = pres.generators
        self.limits = limits
        ngens = len(self.gens)
        self.fwd: list[list[int]] = [[] for _ in range(ngens)]
        self.bwd: list[list[int]] = [[] for _ in range(ngens)]
        self.parent: list[int] = []
        self.live: list[bool] = []
        self.processed: list[bool] = []
        self.dirty: set[int] = set()
        self.stats = EnumerationStats()
        self.basepoint: list[int] = [self.add_vertex() for _ in self.gens]
        for g in range(ngens):
            v = self.basepoint[g]
            self.fwd[g][v] = v
            self.bwd[g][v] = v

    # -- vertex bookkeeping -------------------------------------------------

    def add_vertex(self) -> int:
        if len(self.parent) >= self.limits.max_vertices:
            raise _LimitHit
        v = len(self.parent)
        self.parent.append(v)
        self.live.append(True)
        self.processed.append(False)
        for table in self.fwd:
            table.append(-1)
        for table in self.bwd:
            table.append(-1)
        self.stats.vertices_created += 1
        return v

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def vertex_count(self) -> int:
        return sum(self.live)

    def live_vertices(self) -> list[int]:
        return [v for v in range(len(self.parent)) if self.live[v]]

    def action(self, gen_id: int, v: int, sign: int = 1) -> int | None:
        """The image of a live vertex under one generator letter, or None."""
        table = self.fwd[gen_id] if sign > 0 else self.bwd[gen_id]
        raw = table[self.find(v)]
        return None if raw < 0 else self.find(raw)

    def _step(self):
        self.stats.steps += 1
        if self.stats.steps > self.limits.max_steps:
            raise _LimitHit

    # -- tracing and collapsing ---------------------------------------------

    def trace(self, start: int, letters, target: int | None = None) -> list[tuple[int, int]]:
        """Walk a word from ``start``, forcing the last edge onto ``target``.

        ``letters`` is a sequence of (generator id, sign) pairs.  Edges and
        vertices are created as needed except for the final letter, whose
        edge must land on ``target`` (``start`` itself when ``target`` is
        None, i.e. a universal relation traced as a closed loop).  Returns
        the coincidences discovered; no merging happens here.
        """
        cur = self.find(start)
        goal = cur if target is None else self.find(target)
        if not letters:
            return [] if goal == cur else [(cur, goal)]
        pending: list[tuple[int, int]] = []
        last = len(letters) - 1
        for i, (gen_id, sign) in enumerate(letters):
            self._step()
            if sign > 0:
                out_table, in_table = self.fwd[gen_id], self.bwd[gen_id]
            else:
                out_table, in_table = self.bwd[gen_id], self.fwd[gen_id]
            nxt = out_table[cur]
            if nxt >= 0:
                nxt = self.find(nxt)
                if i == last and nxt != goal:
                    pending.append((nxt, goal))
                cur = nxt
            elif i < last:
                new = self.add_vertex()
                out_table[cur] = new
                in_table[new] = cur
                if self.processed[cur]:
                    self.dirty.add(cur)
                cur = new
            else:
                back = in_table[goal]
                if back >= 0:
                    back = self.find(back)
                    if back != cur:
                        pending.append((back, cur))
                    # else the edge already exists and the loop closes
                else:
                    out_table[cur] = goal
                    in_table[goal] = cur
                    for v in (cur, goal):
                        if self.processed[v]:
                            self.dirty.add(v)
        return pending

    def collapse(self, pending: list[tuple[int, int]]) -> None:
        """Process coincidences to exhaustion.

        Merging keeps the lower-numbered representative and reconciles
        each generator's in/out edges, queueing new coincidences whenever
        both vertices carried distinct images.  Afterwards no live vertex
        has two same-labeled edges in or out.
        """
        queue = list(pending)
        while queue:
            u, v = queue.pop()
            ru, rv = self.find(u), self.find(v)
            if ru == rv:
                continue
            if rv < ru:
                ru, rv = rv, ru
            self._step()
            self.parent[rv] = ru
            self.live[rv] = False
            self.stats.merges += 1
            changed = False
            for tables in (self.fwd, self.bwd):
                for table in tables:
                    tv = table[rv]
                    if tv < 0:
                        continue
                    tu = table[ru]
                    if tu < 0:
                        table[ru] = tv
                        changed = True
                    elif self.find(tu) != self.find(tv):
                        queue.append((tu, tv))
            if changed and self.processed[ru]:
                self.dirty.add(ru)
            self.dirty.discard(rv)

    # -- analysis helpers (completed graphs) ---------------------------------

    def is_total(self) -> bool:
        return all(
            table[v] >= 0
            for v in self.live_vertices()
            for tables in (self.fwd, self.bwd)
            for table in tables
        )

    def live_index(self) -> dict[int, int]:
        """Map live vertex ids to dense element indices in creation order."""
        return {v: i for i, v in enumerate(self.live_vertices())}

    def dense_actions(self) -> list[np.ndarray]:
        """Per generator, the action as a permutation of dense indices."""
        order = self.live_vertices()
        index = {v: i for i, v in enumerate(order)}
        actions = []
        for g in range(len(self.gens)):
            table = self.fwd[g]
            actions.append(np.array([index[self.find(table[v])] for v in order], dtype=np.int64))
        return actions

    def evaluate(self, expr: QuandleExpr) -> int:
        """The vertex of base^exponent, walking the Cayley graph."""
        v = self.find(self.basepoint[expr.base.id])
        for letter in expr.exponent:
            nxt = self.action(letter.gen.id, v, letter.sign)
            if nxt is None:
                raise ValueError(f"action of {letter} undefined at vertex {v}")
            v = nxt
        return v


def enumerate_quandle(pres: Presentation, limits: EnumerationLimits | None = None) -> EnumerationResult:
    """Run Winker's method on an expanded presentation.

    The presentation must already carry its secondary and power relations
    (see :func:`quandleforge.presentation.expand_relations`).  Returns a
    completed graph, or a limit-exceeded report with partial statistics;
    hitting a limit is a report, not an error.
    """
    if limits is None:
        limits = EnumerationLimits()
    graph = CayleyGraph(pres, limits)
    encoded_universals = [
        [(letter.gen.id, letter.sign) for letter in rel.word] for rel in pres.universals
    ]
    try:
        for rel in pres.primaries:
            letters = [(letter.gen.id, letter.sign) for letter in rel.word]
            start = graph.basepoint[rel.lhs_base.id]
            target = graph.basepoint[rel.rhs.id]
            graph.collapse(graph.trace(start, letters, target))
            graph.stats.relations_traced += 1

        pointer = 0
        while True:
            if pointer < len(graph.parent):
                v = pointer
                pointer += 1
                if not graph.live[v] or graph.processed[v]:
                    continue
            elif graph.dirty:
                v = min(graph.dirty)
                graph.dirty.discard(v)
                if not graph.live[v]:
                    continue
            else:
                break
            cur = graph.find(v)
            for letters in encoded_universals:
                graph.collapse(graph.trace(cur, letters))
                graph.stats.relations_traced += 1
                cur = graph.find(cur)
            graph.processed[cur] = True
            graph.dirty.discard(cur)
    except _LimitHit:
        graph.stats.live = graph.vertex_count()
        return EnumerationResult("limit-exceeded", None, graph.stats)

    graph.stats.live = graph.vertex_count()
    assert graph.is_total(), "completed enumeration left a partial action"
    # cheap end-to-end re-check of the primaries, catching trace bugs early
    for rel in pres.primaries:
        v = graph.find(graph.basepoint[rel.lhs_base.id])
        for letter in rel.word:
            v = graph.action(letter.gen.id, v, letter.sign)
        assert v == graph.find(graph.basepoint[rel.rhs.id]), f"primary relation {rel} broken"
    return EnumerationResult("completed", graph, graph.stats)


def trace(graph: CayleyGraph, start: int, word: GroupWord, target: int | None = None):
    """Word-level wrapper over :meth:`CayleyGraph.trace`."""
    return graph.trace(start, [(letter.gen.id, letter.sign) for letter in word], target)


def collapse(graph: CayleyGraph, pending) -> None:
    graph.collapse(list(pending))


def components(graph: CayleyGraph):
    """Orbits of the vertex set under all generator actions.

    Returns ``(orbits, edge_sizes)`` where orbits is a list of lists of
    live vertex ids (each sorted, ordered by smallest member) and
    edge_sizes maps each graph edge index to the size of the component
    containing that edge's generators.
    """
    seen: set[int] = set()
    orbits: list[list[int]] = []
    orbit_of: dict[int, int] = {}
    ngens = len(graph.gens)
    for root in graph.live_vertices():
        if root in seen:
            continue
        orbit = [root]
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop()
            for g in range(ngens):
                for sign in (1, -1):
                    w = graph.action(g, v, sign)
                    if w is not None and w not in seen:
                        seen.add(w)
                        orbit.append(w)
                        queue.append(w)
        orbit.sort()
        for v in orbit:
            orbit_of[v] = len(orbits)
        orbits.append(orbit)
    edge_sizes: dict[int, int] = {}
    for gen in graph.gens:
        edge = graph.pres.edge_of[gen]
        idx = orbit_of[graph.find(graph.basepoint[gen.id])]
        size = len(orbits[idx])
        if edge in edge_sizes and edge_sizes[edge] != size:
            raise ValueError(f"edge {edge} maps to components of different sizes")
        edge_sizes[edge] = size
    return orbits, edge_sizes


def _element_columns(graph: CayleyGraph) -> np.ndarray:
    """Point-symmetry permutation of every element, as dense columns.

    Element x reached as basepoint(b) acted by w has the point symmetry
    conjugate to that of b; columns are built incrementally along a
    breadth-first search seeded at the basepoints in generator order.
    """
    order = graph.live_vertices()
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    actions = graph.dense_actions()
    inverses = [np.argsort(a) for a in actions]
    cols: list[np.ndarray | None] = [None] * n
    queue: list[int] = []
    for g, gen in enumerate(graph.gens):
        b = index[graph.find(graph.basepoint[gen.id])]
        if cols[b] is None:
            cols[b] = actions[g]
            queue.append(b)
    head = 0
    while head < len(queue):
        p = queue[head]
        head += 1
        for g in range(len(graph.gens)):
            for sign in (1, -1):
                child = actions[g][p] if sign > 0 else inverses[g][p]
                if cols[child] is None:
                    # S_(p acted by g) = A_g o S_p o A_g^(-1)
                    if sign > 0:
                        cols[child] = actions[g][cols[p][inverses[g]]]
                    else:
                        cols[child] = inverses[g][cols[p][actions[g]]]
                    queue.append(int(child))
    if any(col is None for col in cols):
        raise ValueError("graph has elements unreachable from every basepoint")
    return np.stack(cols, axis=1)


def quandle_table(graph: CayleyGraph) -> np.ndarray:
    """The full binary operation table T[y][x] = y acted on by x.

    Rows and columns are indexed by dense element index (live vertices in
    creation order).  The column of element x is its point symmetry.
    """
    return _element_columns(graph)


def verify(graph: CayleyGraph, pres: Presentation, full_axiom_limit: int = 400) -> list[str]:
    """Check a completed graph against the quandle axioms and relations.

    Always verified: actions are total mutually inverse bijections, the
    three axioms (self-distributivity via the point symmetries of the
    generators, which conjugate to those of all elements), every primary
    relation path, every universal relation loop at every vertex, and
    the order of the point symmetry of every element of each component.
    Up to ``full_axiom_limit`` elements, the axioms are additionally
    checked on all pairs/triples of the operation table directly.
    Returns a list of violations; empty means verified.
    """
    violations: list[str] = []
    order = graph.live_vertices()
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    ngens = len(graph.gens)

    for g in range(ngens):
        for v in order:
            f = graph.fwd[g][v]
            if f < 0 or graph.bwd[g][v] < 0:
                violations.append(f"action of {graph.gens[g].name} partial at vertex {v}")
                continue
            back = graph.bwd[g][graph.find(f)]
            if back < 0 or graph.find(back) != v:
                violations.append(f"fwd/bwd inconsistent for {graph.gens[g].name} at vertex {v}")
    if violations:
        return violations

    actions = graph.dense_actions()
    for g, gen in enumerate(graph.gens):
        if sorted(actions[g].tolist()) != list(range(n)):
            violations.append(f"action of {gen.name} is not a bijection")
        b = index[graph.find(graph.basepoint[gen.id])]
        if actions[g][b] != b:
            violations.append(f"axiom A1 fails: no loop at the vertex of {gen.name}")

    for rel in pres.primaries:
        start = graph.find(graph.basepoint[rel.lhs_base.id])
        v = start
        ok = True
        for letter in rel.word:
            nxt = graph.action(letter.gen.id, v, letter.sign)
            if nxt is None:
                ok = False
                break
            v = nxt
        if not ok or v != graph.find(graph.basepoint[rel.rhs.id]):
            violations.append(f"primary relation {rel} does not hold")

    for rel in pres.universals:
        word = [(letter.gen.id, letter.sign) for letter in rel.word]
        for v in order:
            cur = v
            for gen_id, sign in word:
                cur = graph.action(gen_id, cur, sign)
            if cur != v:
                violations.append(f"universal relation {rel} open at vertex {v}")
                break

    orbits, _ = components(graph)
    orbit_of: dict[int, int] = {}
    for i, orbit in enumerate(orbits):
        for v in orbit:
            orbit_of[v] = i
    orbit_label: dict[int, int] = {}
    for gen in graph.gens:
        i = orbit_of[graph.find(graph.basepoint[gen.id])]
        want = pres.label_of(gen)
        if orbit_label.setdefault(i, want) != want:
            violations.append(f"component of {gen.name} carries conflicting labels")

    identity = np.arange(n)
    for g, gen in enumerate(graph.gens):
        power = identity
        for _ in range(pres.label_of(gen)):
            power = actions[g][power]
        if not np.array_equal(power, identity):
            violations.append(
                f"point symmetry of {gen.name} does not have order dividing {pres.label_of(gen)}"
            )

    table = quandle_table(graph)
    for g, gen in enumerate(graph.gens):
        b = index[graph.find(graph.basepoint[gen.id])]
        if not np.array_equal(table[:, b], actions[g]):
            violations.append(f"table column of {gen.name} differs from its stored action")

    if not np.array_equal(np.diagonal(table), identity):
        violations.append("axiom A1 fails on the operation table")
    cols_sorted = np.sort(table, axis=0)
    if not np.array_equal(cols_sorted, np.tile(identity[:, None], (1, n))):
        violations.append("axiom A2 fails: some column is not a bijection")

    # A3 for all triples reduces to every generator's point symmetry being
    # a homomorphism: every element's symmetry is a conjugate of one of
    # these, and conjugates/composites of automorphisms are automorphisms.
    for g, gen in enumerate(graph.gens):
        u = actions[g]
        if not np.array_equal(u[table], table[np.ix_(u, u)]):
            violations.append(f"axiom A3 fails under the point symmetry of {gen.name}")

    if n <= full_axiom_limit:
        for z in range(n):
            u = table[:, z]
            if not np.array_equal(u[table], table[np.ix_(u, u)]):
                violations.append(f"axiom A3 fails at element {z}")
                break
        label_of_orbit = {}
        for gen in graph.gens:
            label_of_orbit[orbit_of[graph.find(graph.basepoint[gen.id])]] = pres.label_of(gen)
        for v in order:
            i = orbit_of[v]
            if i not in label_of_orbit:
                continue
            col = table[:, index[v]]
            power = identity
            for _ in range(label_of_orbit[i]):
                power = col[power]
            if not np.array_equal(power, identity):
                violations.append(f"element {v} violates the order of its component label")
                break

    return violations


def canonical_code_of_actions(actions, base: int, names=None) -> str:
    """Canonical string of a based graph with total generator actions.

    Breadth-first relabeling from ``base``, following generators in a
    fixed order (each forward then backward), restricted to the reachable
    part.  Two based, generator-labeled graphs are isomorphic iff their
    codes are equal.
    """
    arrays = [np.asarray(a) for a in actions]
    inverses = [np.argsort(a) for a in arrays]
    relabel = {base: 0}
    order = [base]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for g in range(len(arrays)):
            for table in (arrays[g], inverses[g]):
                w = int(table[v])
                if w not in relabel:
                    relabel[w] = len(order)
                    order.append(w)
    parts = []
    for g in range(len(arrays)):
        name = names[g] if names else str(g)
        imgs = ",".join(str(relabel[int(arrays[g][v])]) for v in order)
        parts.append(f"{name}:{imgs}")
    return f"n={len(order)};" + ";".join(parts)


def canonical_code(graph: CayleyGraph, base: int) -> str:
    """Canonical code of the component of ``base`` in a completed graph."""
    index = graph.live_index()
    actions = graph.dense_actions()
    return canonical_code_of_actions(
        actions,
        index[graph.find(base)],
        [gen.name for gen in graph.gens],
    )
