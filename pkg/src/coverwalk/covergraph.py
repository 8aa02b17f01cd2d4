"""Combinatorial model of a branched cover of a marked nodal curve.

The target is a connected nodal curve given by components and edges; the
source is a list of covering components (with per-point ramification
profiles), contracted components pinned to smooth points, and extra source
nodes lying over smooth points.  Branching multiplicities, the
Riemann-Hurwitz balance, stability thresholds, tail contraction and the wall
spectrum are all computed from this data with integer arithmetic only.

Genus bookkeeping uses the 1 - chi(O) convention throughout, so collapsed or
disconnected pieces may legitimately carry genus < 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from math import inf

from .errors import ValidationError
from .partitions import Partition

NODE_PREFIX = "node"


@dataclass(frozen=True)
class TargetComponent:
    id: str
    genus: int
    markings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ValidationError("target genus must be >= 0")


@dataclass(frozen=True)
class SourceComponent:
    """A covering sheet (degree >= 1) or a contracted component (degree 0).

    profiles maps point names on the image component to ramification
    partitions of the degree; unprofiled points are unramified.  Contracted
    components sit at a single smooth point `at` and attach to the rest of the
    source through `attach_count` nodes; genus is 1 - chi(O) of the whole
    collapsed piece, so it may be negative after a contraction.
    """

    id: str
    over: str
    genus: int
    degree: int = 0
    contracted: bool = False
    at: str | None = None
    attach_count: int = 1
    l_degree: int = 0
    profiles: tuple[tuple[str, Partition], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "profiles", tuple((str(pt), Partition(mu)) for pt, mu in self.profiles)
        )
        if self.l_degree < 0:
            raise ValidationError("l_degree must be >= 0")
        if self.contracted:
            if self.at is None or self.attach_count < 1:
                raise ValidationError("contracted components need an attachment point")
            if self.degree != 0 or self.profiles:
                raise ValidationError("contracted components carry no covering data")
        else:
            if self.degree < 1:
                raise ValidationError("covering components need degree >= 1")
            if self.genus < 0:
                raise ValidationError("covering components need genus >= 0")
            for pt, mu in self.profiles:
                if mu.n != self.degree:
                    raise ValidationError(f"profile {tuple(mu)} at {pt} is not a partition of {self.degree}")

    def profile_at(self, point: str) -> Partition:
        for pt, mu in self.profiles:
            if pt == point:
                return mu
        return Partition([1] * self.degree)


@dataclass(frozen=True)
class SmoothNode:
    """A source node over a smooth target point, joining two sheets."""

    over: str
    at: str
    components: tuple[str, str]


@dataclass(frozen=True)
class CoverGraph:
    targets: tuple[TargetComponent, ...]
    target_edges: tuple[tuple[str, str], ...]
    sources: tuple[SourceComponent, ...]
    smooth_nodes: tuple[SmoothNode, ...] = ()

    def __post_init__(self):
        self.validate()

    # -- structure helpers ---------------------------------------------------

    def target(self, tid: str) -> TargetComponent:
        for t in self.targets:
            if t.id == tid:
                return t
        raise ValidationError(f"unknown target component {tid}")

    def node_name(self, index: int) -> str:
        return f"{NODE_PREFIX}{index}"

    def node_points(self, tid: str) -> list[str]:
        return [self.node_name(i) for i, e in enumerate(self.target_edges) if tid in e]

    def sources_over(self, tid: str) -> list[SourceComponent]:
        return [s for s in self.sources if s.over == tid]

    def covering_over(self, tid: str) -> list[SourceComponent]:
        return [s for s in self.sources_over(tid) if not s.contracted]

    @property
    def degree(self) -> int:
        return sum(s.degree for s in self.covering_over(self.targets[0].id))

    def node_profile(self, index: int, side: str) -> Partition:
        parts = []
        point = self.node_name(index)
        for s in self.covering_over(side):
            parts.extend(s.profile_at(point))
        return Partition(parts)

    def marking_profile(self, tid: str, marking: str) -> Partition:
        parts = []
        for s in self.covering_over(tid):
            parts.extend(s.profile_at(marking))
        return Partition(parts)

    # -- validation -----------------------------------------------------------

    def validate(self):
        tids = [t.id for t in self.targets]
        if len(set(tids)) != len(tids) or not tids:
            raise ValidationError("target component ids must be distinct and nonempty")
        sids = [s.id for s in self.sources]
        if len(set(sids)) != len(sids):
            raise ValidationError("source component ids must be distinct")
        markings = {t.id: set(t.markings) for t in self.targets}
        for a, b in self.target_edges:
            if a not in tids or b not in tids or a == b:
                raise ValidationError(f"bad target edge ({a}, {b})")
        # connectedness of the target
        reach = {tids[0]}
        grow = True
        while grow:
            grow = False
            for a, b in self.target_edges:
                if a in reach and b not in reach:
                    reach.add(b)
                    grow = True
                if b in reach and a not in reach:
                    reach.add(a)
                    grow = True
        if reach != set(tids):
            raise ValidationError("target curve must be connected")
        node_names = {self.node_name(i) for i in range(len(self.target_edges))}
        for s in self.sources:
            if s.over not in tids:
                raise ValidationError(f"source {s.id} lies over unknown component {s.over}")
            if s.contracted and (s.at in markings[s.over] or s.at in node_names):
                raise ValidationError("contracted components attach at smooth non-marked points")
            if not s.contracted:
                for pt, _ in s.profiles:
                    if pt in node_names and pt not in self.node_points(s.over):
                        raise ValidationError(f"profile point {pt} is not a node of {s.over}")
        for nd in self.smooth_nodes:
            if nd.over not in tids:
                raise ValidationError("smooth node over unknown component")
            if nd.at in markings[nd.over] or nd.at in node_names:
                raise ValidationError("smooth nodes sit at smooth non-marked points")
            for sid in nd.components:
                src = next((s for s in self.sources if s.id == sid), None)
                if src is None or src.contracted or src.over != nd.over:
                    raise ValidationError("smooth node branches must be covering sheets over the same component")
        # constant total degree and matching node profiles
        degs = {t.id: sum(s.degree for s in self.covering_over(t.id)) for t in self.targets}
        n = degs[tids[0]]
        if n < 1:
            raise ValidationError("cover degree must be >= 1")
        if any(d != n for d in degs.values()):
            raise ValidationError(f"cover degree must be constant, got {degs}")
        for i, (a, b) in enumerate(self.target_edges):
            if self.node_profile(i, a) != self.node_profile(i, b):
                raise ValidationError(f"profiles mismatch at node {i}")

    # -- genus bookkeeping ------------------------------------------------------

    def source_node_count(self) -> int:
        total = sum(len(self.node_profile(i, a)) for i, (a, _) in enumerate(self.target_edges))
        total += len(self.smooth_nodes)
        total += sum(s.attach_count for s in self.sources if s.contracted)
        return total

    def source_genus(self) -> int:
        """1 - chi(O) of the source; negative when the source is disconnected."""
        chi = sum(1 - s.genus for s in self.sources) - self.source_node_count()
        return 1 - chi

    def target_genus(self) -> int:
        chi = sum(1 - t.genus for t in self.targets) - len(self.target_edges)
        return 1 - chi


def branch_divisor(g: CoverGraph) -> dict[tuple[str, str], int]:
    """Multiplicity of the branching divisor at every recorded smooth point.

    Ramification away from nodes and markings contributes sum(e - 1); a
    contracted piece contributes 2*genus - 2 plus 2 per attachment node; any
    other source node over a smooth point contributes 2.
    """
    out: dict[tuple[str, str], int] = {}
    node_names = {g.node_name(i) for i in range(len(g.target_edges))}

    def bump(tid, pt, amount):
        if amount:
            key = (tid, pt)
            out[key] = out.get(key, 0) + amount

    for s in g.sources:
        if s.contracted:
            bump(s.over, s.at, 2 * s.genus - 2 + 2 * s.attach_count)
            continue
        skip = node_names | set(g.target(s.over).markings)
        for pt, mu in s.profiles:
            if pt in skip:
                continue
            bump(s.over, pt, mu.n - len(mu))
    for nd in g.smooth_nodes:
        bump(nd.over, nd.at, 2)
    return {k: v for k, v in out.items() if v}


def branch_degree_total(g: CoverGraph) -> int:
    return sum(branch_divisor(g).values())


def riemann_hurwitz_check(g: CoverGraph) -> tuple[int, int, bool]:
    """(source genus, branching degree, whether the Riemann-Hurwitz balance holds)."""
    gP = g.source_genus()
    m = branch_degree_total(g)
    marking_age = 0
    for t in g.targets:
        for x in t.markings:
            marking_age += g.marking_profile(t.id, x).age()
    lhs = 2 * gP - 2
    rhs = g.degree * (2 * g.target_genus() - 2) + m + marking_age
    return gP, m, lhs == rhs


def _l_degree_at(g: CoverGraph, tid: str, pt: str) -> int:
    return sum(s.l_degree for s in g.sources if s.contracted and s.over == tid and s.at == pt)


def _special_point_count(g: CoverGraph, t: TargetComponent) -> int:
    return len(g.node_points(t.id)) + len(t.markings)


def rational_tails(g: CoverGraph) -> list[TargetComponent]:
    return [t for t in g.targets if t.genus == 0 and _special_point_count(g, t) == 1 and not t.markings]


def rational_bridges(g: CoverGraph) -> list[TargetComponent]:
    return [
        t
        for t in g.targets
        if t.genus == 0 and len(g.node_points(t.id)) == 2 and not t.markings
    ]


def _component_totals(g: CoverGraph, tid: str, br: dict) -> tuple[int, int]:
    br_deg = sum(v for (t, _), v in br.items() if t == tid)
    l_deg = sum(s.l_degree for s in g.sources_over(tid))
    return br_deg, l_deg


def has_finite_automorphisms(g: CoverGraph) -> tuple[bool, list[str]]:
    """Pattern-match the pure power-map configurations that carry a torus action."""
    reasons = []
    br = branch_divisor(g)
    for s in g.sources:
        if s.contracted and s.genus == 0 and s.l_degree == 0 and s.attach_count <= 2:
            reasons.append(f"contracted rational component {s.id} with no rigidifying degree")
    for t in rational_tails(g):
        br_pts = {pt for (tid, pt), _ in br.items() if tid == t.id}
        _, l_deg = _component_totals(g, t.id, br)
        if len(br_pts) <= 1 and l_deg == 0:
            reasons.append(f"tail {t.id} carries a power-map cover")
    for t in rational_bridges(g):
        br_deg, l_deg = _component_totals(g, t.id, br)
        if br_deg == 0 and l_deg == 0:
            reasons.append(f"bridge {t.id} carries a power-map cover")
    return (not reasons, reasons)


def is_admissible(g: CoverGraph, d0, bridge_strict: bool = False) -> tuple[bool, list[str]]:
    """Stability at threshold d0 = e^(-1/eps); d0 may be math.inf.

    (i) every point multiplicity plus local line-bundle degree is <= d0;
    (ii) every rational tail carries total degree > d0;
    (iii, optional) every rational bridge carries positive total degree;
    (iv) the automorphism group is finite.
    """
    if d0 != inf and (not isinstance(d0, int) or d0 < 1):
        raise ValidationError("d0 must be a positive integer or inf")
    violations = []
    br = branch_divisor(g)
    points = set(br) | {(s.over, s.at) for s in g.sources if s.contracted}
    for tid, pt in sorted(points):
        mult = br.get((tid, pt), 0) + _l_degree_at(g, tid, pt)
        if mult > d0:
            violations.append(f"point ({tid},{pt}) has degree {mult} > d0")
    for t in rational_tails(g):
        br_deg, l_deg = _component_totals(g, t.id, br)
        if not (br_deg + l_deg > d0):
            violations.append(f"tail {t.id} has degree {br_deg + l_deg} <= d0")
    if bridge_strict:
        for t in rational_bridges(g):
            br_deg, l_deg = _component_totals(g, t.id, br)
            if br_deg + l_deg <= 0:
                violations.append(f"bridge {t.id} has degree 0")
    finite, reasons = has_finite_automorphisms(g)
    violations.extend(reasons)
    return (not violations, violations)


def classify_extremal(g: CoverGraph) -> dict:
    """Membership in the two extremal chambers.

    The cover chamber accepts no contracted components, branching multiplicity
    at most one everywhere and finite automorphisms; the map chamber accepts
    any branching but no rational tails, again with finite automorphisms.
    """
    br = branch_divisor(g)
    finite, _ = has_finite_automorphisms(g)
    simple = all(v <= 1 for v in br.values()) and not any(s.contracted for s in g.sources)
    minus_inf = simple and finite
    zero = finite and not rational_tails(g)
    return {"minus_infinity_stable": minus_inf, "zero_stable": zero}


def wall_spectrum(g: CoverGraph) -> list[int]:
    """Thresholds where the admissibility verdict can change."""
    br = branch_divisor(g)
    values = set()
    points = set(br) | {(s.over, s.at) for s in g.sources if s.contracted}
    for tid, pt in points:
        v = br.get((tid, pt), 0) + _l_degree_at(g, tid, pt)
        if v > 0:
            values.add(v)
    for t in rational_tails(g):
        br_deg, l_deg = _component_totals(g, t.id, br)
        if br_deg + l_deg > 0:
            values.add(br_deg + l_deg)
    return sorted(values)


def contract_tail(g: CoverGraph, tail_id: str) -> CoverGraph:
    """Contract a rational tail of the target, collapsing everything above it.

    The sheets over the tail become a single contracted record at the image
    point; node-side ramification of the remaining sheets persists as honest
    branching there.  The total of branching plus line-bundle degree is
    conserved, which is asserted.
    """
    tail = g.target(tail_id)
    if tail not in rational_tails(g):
        raise ValidationError(f"{tail_id} is not a rational tail")
    edge_idx = next(i for i, e in enumerate(g.target_edges) if tail_id in e)
    a, b = g.target_edges[edge_idx]
    parent_id = b if a == tail_id else a
    node_pt = g.node_name(edge_idx)
    nu = g.node_profile(edge_idx, tail_id)

    br_before = branch_divisor(g)
    lhs = sum(v for (tid, _), v in br_before.items() if tid == tail_id)
    lhs += sum(s.l_degree for s in g.sources_over(tail_id))

    over_tail = g.sources_over(tail_id)
    nodes_in_tail = sum(1 for nd in g.smooth_nodes if nd.over == tail_id)
    nodes_in_tail += sum(s.attach_count for s in over_tail if s.contracted)
    chi = sum(1 - s.genus for s in over_tail) - nodes_in_tail
    collapsed_genus = 1 - chi
    collapsed_l = sum(s.l_degree for s in over_tail)

    new_point = f"contr_{tail_id}"
    new_targets = tuple(t for t in g.targets if t.id != tail_id)
    # re-index node names for the surviving edges
    survivors = [e for i, e in enumerate(g.target_edges) if i != edge_idx]
    rename = {}
    kept = 0
    for i, e in enumerate(g.target_edges):
        if i == edge_idx:
            rename[g.node_name(i)] = new_point
        else:
            rename[g.node_name(i)] = f"{NODE_PREFIX}{kept}"
            kept += 1

    new_sources = []
    for s in g.sources:
        if s.over == tail_id:
            continue
        profiles = tuple((rename.get(pt, pt), mu) for pt, mu in s.profiles)
        at = rename.get(s.at, s.at) if s.at else None
        new_sources.append(replace(s, profiles=profiles, at=at))
    fresh_id = f"contr_{tail_id}_src"
    new_sources.append(
        SourceComponent(
            id=fresh_id,
            over=parent_id,
            genus=collapsed_genus,
            contracted=True,
            at=new_point,
            attach_count=len(nu),
            l_degree=collapsed_l,
        )
    )
    new_nodes = tuple(
        replace(nd, at=rename.get(nd.at, nd.at)) for nd in g.smooth_nodes if nd.over != tail_id
    )
    contracted = CoverGraph(new_targets, tuple(survivors), tuple(new_sources), new_nodes)

    br_after = branch_divisor(contracted)
    rhs = br_after.get((parent_id, new_point), 0) + _l_degree_at(contracted, parent_id, new_point)
    assert lhs == rhs, f"contraction must conserve degree: {lhs} != {rhs}"
    return contracted


# -- randomized construction (consistent by design) ----------------------------


def _random_partition(rng: random.Random, n: int) -> Partition:
    parts = []
    left = n
    while left > 0:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return Partition(parts)


def _random_composition(rng: random.Random, n: int) -> list[int]:
    parts = []
    left = n
    while left > 0:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return parts


def random_cover_graph(
    rng: random.Random,
    max_degree: int = 6,
    max_components: int = 4,
    allow_contracted: bool = True,
    allow_smooth_nodes: bool = True,
) -> CoverGraph:
    """A random valid graph; the Riemann-Hurwitz balance holds by construction.

    Covering genera are solved per component from their own ramification, with
    rejection until every sheet is realizable.
    """
    for _ in range(10_000):
        n = rng.randint(1, max_degree)
        k = rng.randint(1, max_components)
        targets = [
            TargetComponent(
                f"t{i}",
                rng.randint(0, 2),
                tuple(f"x{i}_{j}" for j in range(rng.randint(0, 2))),
            )
            for i in range(k)
        ]
        edges = [(f"t{rng.randint(0, i - 1)}", f"t{i}") for i in range(1, k)]
        node_profiles = [_random_partition(rng, n) for _ in edges]

        graph = _try_build(rng, n, targets, edges, node_profiles, allow_contracted, allow_smooth_nodes)
        if graph is not None:
            return graph
    raise RuntimeError("random graph generation failed")


def _try_build(rng, n, targets, edges, node_profiles, allow_contracted, allow_smooth_nodes):
    sources = []
    sid = 0
    for t in targets:
        adjacent = [
            (f"{NODE_PREFIX}{i}", node_profiles[i]) for i, e in enumerate(edges) if t.id in e
        ]
        # group the parts of every adjacent node profile into sheets
        pieces = _random_composition(rng, n)
        assignments = [dict() for _ in pieces]
        ok = True
        for pt, nu in adjacent:
            remaining = list(range(len(pieces)))
            groups = [[] for _ in pieces]
            for part in sorted(nu, reverse=True):
                fits = [
                    i
                    for i in remaining
                    if sum(groups[i]) + part <= pieces[i]
                ]
                if not fits:
                    ok = False
                    break
                i = rng.choice(fits)
                groups[i].append(part)
            if not ok:
                break
            for i, grp in enumerate(groups):
                if sum(grp) != pieces[i]:
                    ok = False
                    break
                assignments[i][pt] = Partition(grp)
            if not ok:
                break
        if not ok:
            return None
        for i, deg in enumerate(pieces):
            profiles = dict(assignments[i])
            # free branch points, then fix parity with extra simple points
            for j in range(rng.randint(0, 2)):
                if deg >= 2:
                    profiles[f"p{t.id}_{sid}_{j}"] = _random_partition(rng, deg)
            total_age = sum(mu.age() for mu in profiles.values())
            if total_age % 2 == 1:
                if deg < 2:
                    return None
                profiles[f"padj{t.id}_{sid}"] = Partition([2] + [1] * (deg - 2))
                total_age += 1
            gv2 = deg * (2 * t.genus - 2) + total_age + 2
            if gv2 < 0 or gv2 % 2 != 0:
                return None
            sources.append(
                SourceComponent(
                    id=f"s{sid}",
                    over=t.id,
                    genus=gv2 // 2,
                    degree=deg,
                    l_degree=rng.randint(0, 2),
                    profiles=tuple(profiles.items()),
                )
            )
            sid += 1
    if allow_contracted and rng.random() < 0.5:
        t = rng.choice(targets)
        sources.append(
            SourceComponent(
                id=f"s{sid}",
                over=t.id,
                genus=rng.randint(0, 2),
                contracted=True,
                at=f"c{t.id}_{sid}",
                l_degree=rng.randint(0, 2),
            )
        )
        sid += 1
    smooth = []
    if allow_smooth_nodes and rng.random() < 0.4:
        t = rng.choice(targets)
        sheets = [s for s in sources if s.over == t.id and not s.contracted]
        if len(sheets) >= 2:
            pair = rng.sample(sheets, 2)
            smooth.append(SmoothNode(t.id, f"n{t.id}", (pair[0].id, pair[1].id)))
    try:
        return CoverGraph(tuple(targets), tuple(edges), tuple(sources), tuple(smooth))
    except ValidationError:
        return None


def rh_breaking_mutations(g: CoverGraph, rng: random.Random, count: int = 3) -> list[CoverGraph]:
    """Graphs differing from g by one change that must break the balance."""
    out = []
    attempts = 0
    while len(out) < count and attempts < 200:
        attempts += 1
        kind = rng.choice(("source_genus", "target_genus", "profile"))
        try:
            if kind == "source_genus":
                covering = [s for s in g.sources if not s.contracted]
                s = rng.choice(covering)
                mutated = replace(s, genus=s.genus + 1)
                out.append(replace(g, sources=tuple(mutated if x.id == s.id else x for x in g.sources)))
            elif kind == "target_genus":
                t = rng.choice(g.targets)
                mutated = replace(t, genus=t.genus + 1)
                out.append(replace(g, targets=tuple(mutated if x.id == t.id else x for x in g.targets)))
            else:
                node_names = {g.node_name(i) for i in range(len(g.target_edges))}
                candidates = [
                    (s, pt, mu)
                    for s in g.sources
                    if not s.contracted
                    for pt, mu in s.profiles
                    if pt not in node_names and mu.age() + 1 <= s.degree - 1
                ]
                if not candidates:
                    continue
                s, pt, mu = rng.choice(candidates)
                merged = sorted(mu, reverse=True)
                # merge the two smallest parts: age goes up by one
                a1 = merged.pop()
                a2 = merged.pop()
                merged.append(a1 + a2)
                new_profiles = tuple(
                    (p, Partition(merged) if p == pt else m) for p, m in s.profiles
                )
                mutated = replace(s, profiles=new_profiles)
                out.append(replace(g, sources=tuple(mutated if x.id == s.id else x for x in g.sources)))
        except ValidationError:
            continue
    return out
