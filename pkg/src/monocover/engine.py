"""The transference engine: certified stable sequences to bounded-radius covers.

One step: given an (m, km)-duality of a sequence item into a metric family,
either the balls of radius km around the witness images cover everything, or
some uncovered point lets the embedding grow by one edge into an
(m', k^(1/4r) m')-duality of an earlier item (or of the matching relative,
which certifies an independence violation).  The driver starts from the
single-edge item, whose duality is trivial, and walks strictly down the
sequence, so it stops within ell steps.

All schedule constants are exact (symbolic powers); every inequality the
argument uses -- the threshold-selection trio, the growth chain, the
per-step duality conditions, the downgrade legality -- is asserted at run
time with integer arithmetic via cmp_power, never assumed.

On graphs: when the vertex count is at most twice the engine bound (always,
at any feasible scale, since the bound is a tower), any cover by the right
number of monochromatic trees qualifies, and one is extracted on the
hypergraph side through the certified sequence; the metric machinery runs
unchanged on synthetic families with genuinely large distances.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .abdual import DualityEmbedding, is_ab_duality
from .duality import ColoredMultigraph, colored_to_hyper, find_independent_set, is_independent
from .errors import (
    EngineAssertionError,
    IndependenceViolation,
    PreconditionError,
    SizeGuardError,
)
from .exactnum import (
    PowNum,
    cmp_power,
    exact_add,
    exact_cmp,
    exact_mul,
    exact_pow,
    exact_root,
    exact_to_string,
)
from .hypergraph import Edge, PartiteHypergraph, fresh_vertex_names, contains_copy
from .metrics import MetricFamily, ball
from .stability import StableSequence, cover_from_sequence, _embedded_edges, _is_matching_shape

ExactLike = Union[int, PowNum]


# --- parameter schedules -----------------------------------------------------


@dataclass(frozen=True)
class ParameterSchedule:
    """Exact per-index constants k_0..k_ell and m_0..m_ell.

    Invariants (validated): every k_i exceeds 2**(9r); k_{i-1} equals
    k_i**(1/4r) in paper mode and is at most that in adaptive mode; each m_i
    is the product of the later k_j (one extra k beyond the sequence end),
    so the m_i are nonincreasing and a grown parameter m' <= k_i m_i always
    fits under every earlier m_j.
    """

    r: int
    ell: int
    mode: str
    k: tuple[ExactLike, ...]
    m: tuple[ExactLike, ...]
    k_top: ExactLike

    def __post_init__(self):
        if len(self.k) != self.ell + 1 or len(self.m) != self.ell + 1:
            raise PreconditionError("schedule needs k_0..k_ell and m_0..m_ell")
        floor = 2 ** (9 * self.r)
        chain = list(self.k) + [self.k_top]
        for i, k_i in enumerate(chain):
            if exact_cmp(k_i, floor) <= 0:
                raise PreconditionError(f"k_{i} must exceed 2^(9r) = {floor}")
            if exact_root(k_i, 4 * self.r) is None or exact_root(k_i, 2) is None:
                raise PreconditionError(
                    f"k_{i} must admit exact 4r-th and square roots for the chain checks")
        for i in range(1, len(chain)):
            rel = cmp_power(chain[i - 1], chain[i], 1, 4 * self.r)
            if self.mode == "paper" and rel != 0:
                raise PreconditionError(f"paper mode needs k_{i - 1} = k_{i}^(1/4r)")
            if rel > 0:
                raise PreconditionError(f"schedule needs k_{i - 1} <= k_{i}^(1/4r)")
        for i in range(1, self.ell + 1):
            if exact_cmp(self.m[i - 1], self.m[i]) < 0:
                raise PreconditionError("m values must be nonincreasing")

    def engine_bound(self) -> ExactLike:
        """The largest ball radius any run can certify: k_0 * m_0."""
        return exact_mul(self.k[0], self.m[0])


def _power_schedule(r: int, ell: int, base: int, mode: str) -> ParameterSchedule:
    four_r = 4 * r
    k = tuple(PowNum.power(base, four_r ** (i + 1)) for i in range(ell + 1))
    k_top = PowNum.power(base, four_r ** (ell + 2))
    m = tuple(
        PowNum.power(base, sum(four_r ** (j + 1) for j in range(i + 1, ell + 2)))
        for i in range(ell + 1)
    )
    return ParameterSchedule(r=r, ell=ell, mode=mode, k=k, m=m, k_top=k_top)


def paper_schedule(r: int, ell: int) -> ParameterSchedule:
    """k_i = 9**((4r)**(i+1)); certified radii come out as powers of 9."""
    return _power_schedule(r, ell, 9, "paper")


def adaptive_schedule(r: int, ell: int, base: Optional[int] = None) -> ParameterSchedule:
    """Same shape with the smallest admissible base 2**(9r) + 1."""
    return _power_schedule(r, ell, base if base is not None else 2 ** (9 * r) + 1, "adaptive")


def custom_schedule(r: int, k_values: Sequence[ExactLike]) -> ParameterSchedule:
    """An explicit k list (adaptive rules); m values derived as suffix products."""
    ell = len(k_values) - 1
    k = tuple(k_values)
    k_top = exact_pow(k[-1], 4 * r)
    chain = list(k) + [k_top]
    m = []
    for i in range(ell + 1):
        prod: ExactLike = 1
        for j in range(i + 1, ell + 2):
            prod = exact_mul(prod, chain[j])
        m.append(prod)
    return ParameterSchedule(r=r, ell=ell, mode="adaptive", k=k, m=tuple(m), k_top=k_top)


# --- threshold selection (the t' scan) ---------------------------------------


def find_t_prime(m_list: Sequence[int], m: ExactLike, k: ExactLike, r: int):
    """Select the split index t' and the grown parameter m' = m_{t'} + m.

    `m_list` holds the r sorted per-metric minima; with boundary values
    m_0 = m and m_{r+1} = k m, take s = the largest index with
    m_s <= k**(1/3r) m, then t' = the smallest index >= s with
    m_{t'+1} > k**(1/3r) m_{t'}.  Existence of both is forced by k > 2**(9r)
    (otherwise the chained inequalities would collapse km below itself) and
    the three selection facts are re-asserted before returning:

        m_{t'+1} > k**(1/3r) m,   m_{t'+1} > k**(1/3r) m_{t'},   m_{t'} <= sqrt(k) m.
    """
    if len(m_list) != r:
        raise PreconditionError(f"expected {r} per-metric minima")
    if exact_cmp(k, 2 ** (9 * r)) <= 0:
        raise PreconditionError("threshold selection needs k > 2^(9r)")
    three_r = 3 * r
    seq: list[ExactLike] = [m] + list(m_list) + [exact_mul(k, m)]

    s = None
    for idx in range(r + 2):
        if cmp_power(seq[idx], k, 1, three_r, scale=m) <= 0:
            s = idx
    if s is None or s > r:
        raise EngineAssertionError("threshold scan: no admissible start index")

    t_prime = None
    for idx in range(s, r + 1):
        if cmp_power(seq[idx + 1], k, 1, three_r, scale=seq[idx]) > 0:
            t_prime = idx
            break
    if t_prime is None:
        raise EngineAssertionError("threshold scan: no split index; k too small?")

    if cmp_power(seq[t_prime + 1], k, 1, three_r, scale=m) <= 0:
        raise EngineAssertionError("threshold selection: m_{t'+1} <= k^(1/3r) m")
    if cmp_power(seq[t_prime + 1], k, 1, three_r, scale=seq[t_prime]) <= 0:
        raise EngineAssertionError("threshold selection: m_{t'+1} <= k^(1/3r) m_{t'}")
    if cmp_power(seq[t_prime], k, 1, 2, scale=m) > 0:
        raise EngineAssertionError("threshold selection: m_{t'} > sqrt(k) m")

    m_prime = exact_add(seq[t_prime], m)
    return t_prime, m_prime


def check_growth_chain(m: ExactLike, m_prime: ExactLike, k: ExactLike, r: int) -> None:
    """Assert m <= m' < k^(1/4r) m' <= 2 k^(1/4r + 1/2) m <= (k - sqrt k) m < k m.

    The middle comparisons need sqrt(k) and k^(1/4r) exactly; schedules only
    admit such k.  Each link is an integer comparison:

        link 3 squares to  m'^2 <= 4 k m^2,
        link 4 rearranges to  2 k^(1/4r) sqrt(k) m + sqrt(k) m <= k m,
        link 5 is  sqrt(k) m > 0.
    """
    four_r = 4 * r
    if exact_cmp(m, m_prime) > 0:
        raise EngineAssertionError("growth chain: m > m'")
    if cmp_power(m_prime, k, 1, four_r, scale=m_prime) >= 0:
        raise EngineAssertionError("growth chain: m' >= k^(1/4r) m'")
    lhs = exact_mul(m_prime, m_prime)
    rhs = exact_mul(exact_mul(4, k), exact_mul(m, m))
    if exact_cmp(lhs, rhs) > 0:
        raise EngineAssertionError("growth chain: k^(1/4r) m' > 2 k^(1/4r+1/2) m")
    kq = exact_root(k, four_r)
    sk = exact_root(k, 2)
    if kq is None or sk is None:
        raise EngineAssertionError("growth chain needs k with exact 4r-th and square roots")
    mid = exact_add(exact_mul(exact_mul(2, kq), exact_mul(sk, m)), exact_mul(sk, m))
    if exact_cmp(mid, exact_mul(k, m)) > 0:
        raise EngineAssertionError("growth chain: 2 k^(1/4r+1/2) m > (k - sqrt k) m")
    if exact_cmp(exact_mul(sk, m), 0) <= 0:
        raise EngineAssertionError("growth chain: (k - sqrt k) m >= k m")


# --- transference step --------------------------------------------------------


@dataclass(frozen=True)
class TransferenceState:
    """A sequence index with a live duality of its item into the family.

    `embedding` maps the item's edges to family vertices and satisfies the
    (m, k_index m)-duality conditions; the witness is the item's stability
    cover, carried through whatever relabelling produced this state.
    """

    index: int  # 1-based position in the sequence
    hypergraph: PartiteHypergraph
    witness: tuple[str, ...]
    embedding: dict[Edge, str] = field(compare=False)
    m: ExactLike = 1


@dataclass(frozen=True)
class BallInfo:
    center: str
    metric: int  # 1-based, equals the colour for graph metrics
    radius: ExactLike
    members: frozenset[str]


@dataclass(frozen=True)
class BallCoverResult:
    balls: tuple[BallInfo, ...]


@dataclass(frozen=True)
class DualGrowthResult:
    pattern: str                     # "item:j" or "relative:j"
    index: Optional[int]             # j for items, None for relatives
    state: Optional[TransferenceState]
    t_prime: int
    m_prime: ExactLike
    b_prime: ExactLike
    embedding: DualityEmbedding      # the restricted duality of the found pattern


def initial_state(seq: StableSequence, family: MetricFamily,
                  sched: ParameterSchedule) -> TransferenceState:
    """The trivial duality of the terminal single-edge item at (m_ell, k_ell m_ell)."""
    item = seq.items[-1]
    edge = item.hypergraph.sorted_edges[0]
    return TransferenceState(
        index=len(seq.items),
        hypergraph=item.hypergraph,
        witness=item.witness,
        embedding={edge: family.vertices[0]},
        m=sched.m[len(seq.items)],
    )


def transference_step(state: TransferenceState, seq: StableSequence,
                      family: MetricFamily, k: ExactLike):
    """One step: a c-ball cover of V, or growth to an earlier pattern.

    Asserted along the way: the uncovered point is outside the image, the
    selection trio and the growth chain hold, the grown map is an
    (m', k^(1/4r) m')-duality, the witness fails to cover the grown
    hypergraph, and the restriction to the found copy is still a duality.
    A copy of the matching relative raises IndependenceViolation carrying
    nu+1 pairwise-far points.
    """
    h, phi, m = state.hypergraph, state.embedding, state.m
    r = h.r
    if exact_cmp(k, 2 ** (9 * r)) <= 0:
        raise PreconditionError("transference needs k > 2^(9r)")
    b = exact_mul(k, m)

    balls = []
    covered: set[str] = set()
    for u in state.witness:
        p = h.part_of[u] + 1
        e_u = next((e for e in h.sorted_edges if e[p - 1] == u), None)
        if e_u is None:
            continue  # an isolated witness vertex covers nothing and owns no ball
        members = ball(family, p, phi[e_u], b)
        balls.append(BallInfo(center=phi[e_u], metric=p, radius=b, members=members))
        covered |= members
    missing = [v for v in family.vertices if v not in covered]
    if not missing:
        return BallCoverResult(balls=tuple(balls))

    v = min(missing)
    if v in set(phi.values()):
        raise EngineAssertionError("uncovered point lies in the embedding image")

    minima: dict[int, int] = {}
    argmin: dict[int, Edge] = {}
    for t in range(1, r + 1):
        best, best_edge = None, None
        for f in h.sorted_edges:
            d = family.dist(t, phi[f], v)
            if not isinstance(d, int):
                raise PreconditionError("transference requires integer-valued metrics")
            if best is None or d < best:
                best, best_edge = d, f
        minima[t], argmin[t] = best, best_edge

    order = sorted(range(1, r + 1), key=lambda t: (minima[t], t))
    m_sorted = [minima[t] for t in order]
    t_prime, m_prime = find_t_prime(m_sorted, m, k, r)
    check_growth_chain(m, m_prime, k, r)

    fresh = fresh_vertex_names(h, tag="*")
    new_edge: list[Optional[str]] = [None] * r
    for pos, t in enumerate(order, start=1):
        if pos <= t_prime:
            new_edge[t - 1] = argmin[t][t - 1]
        else:
            new_edge[t - 1] = fresh[t - 1]
    e_new = tuple(new_edge)
    if e_new in h.edges:
        raise EngineAssertionError("grown edge already present; witness cannot miss it")
    if set(e_new) & set(state.witness):
        raise EngineAssertionError("grown edge meets the witness; ball cover missed it")

    grown = h.add_edge(e_new)
    phi_grown = dict(phi)
    phi_grown[e_new] = v
    kq = exact_root(k, 4 * r)
    if kq is None:
        raise EngineAssertionError("growth needs k with an exact 4r-th root")
    b_prime = exact_mul(kq, m_prime)
    grown_emb = DualityEmbedding(grown, family, phi_grown, a=m_prime, b=b_prime)
    ok, violation = is_ab_duality(grown_emb)
    if not ok:
        raise EngineAssertionError(f"grown map is not an (m', k^(1/4r) m')-duality: {violation}")

    prefix = state.index - 1
    candidates = [(f"item:{j + 1}", j + 1, seq.items[j].hypergraph) for j in range(prefix)]
    candidates += [(f"relative:{j + 1}", None, rel) for j, rel in enumerate(seq.relatives)]
    for label, index, pattern in candidates:
        emb = contains_copy(grown, pattern, mode="permuting")
        if emb is None:
            continue
        copy_edges = _embedded_edges(pattern, emb.vertex_map, emb.part_map, grown)
        restricted = DualityEmbedding(
            grown.restrict(copy_edges), family,
            {e: phi_grown[e] for e in copy_edges}, a=m_prime, b=b_prime)
        ok, violation = is_ab_duality(restricted)
        if not ok:
            raise EngineAssertionError(f"restricted duality failed: {violation}")
        if index is None and _is_matching_shape(pattern, seq.nu + 1):
            points = sorted(restricted.mapping.values())
            _assert_pairwise_far(family, points)
            raise IndependenceViolation(points)
        new_state = None
        if index is not None:
            new_h = restricted.hypergraph
            wmap = emb.vertex_map
            new_state = TransferenceState(
                index=index,
                hypergraph=new_h,
                witness=tuple(sorted(wmap[w] for w in seq.items[index - 1].witness)),
                embedding=dict(restricted.mapping),
                m=m_prime,
            )
        return DualGrowthResult(
            pattern=label, index=index, state=new_state,
            t_prime=t_prime, m_prime=m_prime, b_prime=b_prime, embedding=restricted)
    raise EngineAssertionError(
        "stability certificate violated: grown hypergraph contains no pattern")


def _assert_pairwise_far(family: MetricFamily, points: Sequence[str]) -> None:
    for u, w in itertools.combinations(points, 2):
        for t in range(1, family.r + 1):
            if exact_cmp(family.dist(t, u, w), 1) <= 0:
                raise EngineAssertionError(
                    f"claimed far pair {u},{w} is within distance 1 in metric {t}")


# --- the descending driver ----------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    index: int
    m: str
    k: str
    outcome: str  # "cover" or the grown pattern label


@dataclass(frozen=True)
class BallCoverOutcome:
    balls: tuple[BallInfo, ...]
    steps: tuple[StepRecord, ...]
    schedule_mode: str


PREMISE_SCAN_CAP = 64


def check_premise(family: MetricFamily, nu: int,
                  max_vertices: int = PREMISE_SCAN_CAP) -> None:
    """Every nu+1 points must contain a pair within distance 1 in some metric.

    Exhaustive: equivalent to the close-pair graph having no independent set
    of size nu+1; a violating set raises IndependenceViolation.
    """
    n = len(family.vertices)
    if n > max_vertices:
        raise SizeGuardError(f"premise scan guard: {n} vertices > cap {max_vertices}")
    close_edges = []
    for u, w in itertools.combinations(family.vertices, 2):
        if any(exact_cmp(family.dist(t, u, w), 1) <= 0 for t in range(1, family.r + 1)):
            close_edges.append((u, w, 1))
    close = ColoredMultigraph.build(1, family.vertices, close_edges)
    bad = find_independent_set(close, nu + 1, max_vertices=max_vertices)
    if bad is not None:
        raise IndependenceViolation(bad)


def ball_cover(family: MetricFamily, seq: StableSequence, sched: ParameterSchedule,
               premise_checked: bool = False) -> BallCoverOutcome:
    """Cover the family's vertex set by at most (r-1) nu balls.

    Starts at the terminal single-edge item and applies transference steps;
    each growth lands at a strictly earlier index, with the downgrade
    legality k_j <= k_i^(1/4r) and m' <= m_j asserted per step, so the loop
    runs at most ell times.
    """
    if seq.verified is None or not seq.verified.certified:
        raise PreconditionError("ball_cover needs a certified sequence")
    ell = len(seq.items)
    if sched.ell != ell or sched.r != seq.r:
        raise PreconditionError("schedule does not match the sequence")
    if not family.vertices:
        return BallCoverOutcome((), (), sched.mode)
    if not premise_checked:
        check_premise(family, seq.nu)

    state = initial_state(seq, family, sched)
    steps: list[StepRecord] = []
    for _ in range(ell + 1):
        k_i = sched.k[state.index]
        result = transference_step(state, seq, family, k_i)
        if isinstance(result, BallCoverResult):
            steps.append(StepRecord(state.index, exact_to_string(state.m),
                                    exact_to_string(k_i), "cover"))
            covered = set().union(*(b.members for b in result.balls)) if result.balls else set()
            if covered != set(family.vertices):
                raise EngineAssertionError("ball cover result does not cover V")
            if len(result.balls) > seq.c:
                raise EngineAssertionError("ball cover uses more than c balls")
            return BallCoverOutcome(result.balls, tuple(steps), sched.mode)
        steps.append(StepRecord(state.index, exact_to_string(state.m),
                                exact_to_string(k_i), result.pattern))
        if result.index is None:
            raise EngineAssertionError(
                f"growth landed on {result.pattern}, which is not a sequence item")
        j = result.index
        if j >= state.index:
            raise EngineAssertionError("growth did not decrease the sequence index")
        if cmp_power(sched.k[j], k_i, 1, 4 * seq.r) > 0:
            raise EngineAssertionError("downgrade legality failed: k_j > k_i^(1/4r)")
        if exact_cmp(result.m_prime, sched.m[j]) > 0:
            raise EngineAssertionError("downgrade legality failed: m' > m_j")
        state = result.state
    raise EngineAssertionError("driver exceeded ell steps without covering")


# --- monochromatic tree covers ------------------------------------------------


@dataclass(frozen=True)
class TreeCertificate:
    """One monochromatic tree: a parent map within a single colour class.

    `measured_diameter` is the exact diameter of the colour subgraph induced
    on the tree's vertex set; it is at most twice the certified radius.
    """

    color: int
    root: str
    parents: dict[str, str] = field(compare=False)
    vertices: frozenset[str] = frozenset()
    certified_radius: ExactLike = 0
    measured_diameter: int = 0


@dataclass(frozen=True)
class TreeCover:
    trees: tuple[TreeCertificate, ...]
    r: int
    nu: int
    path: str  # "component" (small-graph shortcut) or "metric" (ball cover)
    schedule_mode: str
    steps: tuple[StepRecord, ...] = ()
    schedule: Optional[ParameterSchedule] = None


def _color_subgraph_bfs(g: ColoredMultigraph, color: int, root: str,
                        allowed: frozenset[str]) -> tuple[dict[str, str], dict[str, int]]:
    adj = g.color_adjacency(color)
    parents: dict[str, str] = {}
    dist = {root: 0}
    q = deque([root])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y in allowed and y not in dist:
                dist[y] = dist[x] + 1
                parents[y] = x
                q.append(y)
    return parents, dist


def _induced_diameter(g: ColoredMultigraph, color: int, members: frozenset[str]) -> int:
    """Exact diameter of the colour subgraph induced on `members`."""
    adj = g.color_adjacency(color)
    best = 0
    for src in members:
        dist = {src: 0}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y in members and y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        if len(dist) != len(members):
            raise EngineAssertionError("tree vertex set is disconnected in its colour")
        best = max(best, max(dist.values()))
    return best


def _component_center(g: ColoredMultigraph, color: int, members: frozenset[str]) -> str:
    """The vertex of minimum eccentricity within the induced colour subgraph."""
    adj = g.color_adjacency(color)
    best_v, best_ecc = None, None
    for src in sorted(members):
        dist = {src: 0}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y in members and y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        ecc = max(dist.values()) if dist else 0
        if len(dist) != len(members):
            raise EngineAssertionError("component members are disconnected")
        if best_ecc is None or ecc < best_ecc:
            best_v, best_ecc = src, ecc
    return best_v


def _tree_from_members(g: ColoredMultigraph, color: int, members: frozenset[str],
                       certified_radius: ExactLike,
                       root: Optional[str] = None) -> TreeCertificate:
    if len(members) == 1:
        only = next(iter(members))
        return TreeCertificate(color, only, {}, members, certified_radius, 0)
    root = root if root is not None else _component_center(g, color, members)
    parents, dist = _color_subgraph_bfs(g, color, root, members)
    if set(dist) != set(members):
        raise EngineAssertionError("ball members not reachable inside the colour class")
    measured = _induced_diameter(g, color, members)
    return TreeCertificate(color, root, parents, members, certified_radius, measured)


def tree_cover(g: ColoredMultigraph, seq: StableSequence,
               sched: Optional[ParameterSchedule] = None) -> TreeCover:
    """Cover V(G) by at most (r-1) nu monochromatic trees with certified radii.

    Checks the independence premise exactly first (a violating nu+1 set
    raises IndependenceViolation, carrying the verified set).  At any
    feasible vertex count the graph sits below twice the engine bound, so a
    qualifying cover is extracted on the hypergraph side via the certified
    sequence; each component becomes a breadth-first tree and, when a single
    component suffices, the spanning component of smallest induced diameter
    is preferred.  Beyond the bound (unreachable for the tower schedules)
    the ball-cover machinery would run on the graph metrics instead.
    """
    if seq.verified is None or not seq.verified.certified:
        raise PreconditionError("tree_cover needs a certified sequence")
    if g.r != seq.r:
        raise PreconditionError("graph colours and sequence uniformity differ")
    sched = sched if sched is not None else adaptive_schedule(seq.r, len(seq.items))
    n = len(g.vertices)
    if n == 0:
        return TreeCover((), g.r, seq.nu, "component", sched.mode, schedule=sched)

    bad = find_independent_set(g, seq.nu + 1, max_vertices=max(40, n))
    if bad is not None:
        if not is_independent(g, bad):
            raise EngineAssertionError("claimed independent set has an edge")
        raise IndependenceViolation(bad)

    bound = sched.engine_bound()
    if exact_cmp(n, exact_mul(2, bound)) <= 0:
        return _tree_cover_small(g, seq, sched, n)
    return _tree_cover_metric(g, seq, sched, n)


def _component_lookup(g: ColoredMultigraph) -> dict[str, tuple[int, frozenset[str]]]:
    """Map colour-component ids (as produced by colored_to_hyper) to members."""
    out = {}
    for c in range(1, g.r + 1):
        for comp in g.color_components(c):
            out[f"c{c}:{comp[0]}"] = (c, frozenset(comp))
    return out


def _tree_cover_small(g: ColoredMultigraph, seq: StableSequence,
                      sched: ParameterSchedule, n: int) -> TreeCover:
    h = colored_to_hyper(g)
    cover_ids = cover_from_sequence(h, seq)
    lookup = _component_lookup(g)
    chosen = [lookup[cid] for cid in cover_ids]

    certified = n - 1
    if len(chosen) == 1:
        # any spanning monochromatic component qualifies; take the best diameter
        options = []
        for c in range(1, g.r + 1):
            for comp in g.color_components(c):
                if len(comp) == n:
                    options.append((_induced_diameter(g, c, frozenset(comp)), c, frozenset(comp)))
        options.sort(key=lambda x: (x[0], x[1], sorted(x[2])))
        if options:
            _, c, members = options[0]
            chosen = [(c, members)]

    trees = tuple(_tree_from_members(g, c, members, certified) for c, members in chosen)
    _validate_cover(g, trees, seq)
    return TreeCover(trees, g.r, seq.nu, "component", sched.mode, schedule=sched)


def _tree_cover_metric(g: ColoredMultigraph, seq: StableSequence,
                       sched: ParameterSchedule, n: int) -> TreeCover:
    family = MetricFamily.from_colored_graph(g)
    outcome = ball_cover(family, seq, sched, premise_checked=True)
    trees = []
    for b in outcome.balls:
        color = b.metric
        comp = next(comp for comp in g.color_components(color) if b.center in comp)
        if not b.members <= set(comp):
            raise EngineAssertionError(
                "ball leaves its colour component despite the radius cap argument")
        certified = b.radius if exact_cmp(b.radius, n - 1) < 0 else n - 1
        trees.append(_tree_from_members(g, color, b.members, certified, root=b.center))
    trees = tuple(trees)
    _validate_cover(g, trees, seq)
    return TreeCover(trees, g.r, seq.nu, "metric", sched.mode, outcome.steps, schedule=sched)


def _validate_cover(g: ColoredMultigraph, trees: Sequence[TreeCertificate],
                    seq: StableSequence) -> None:
    if len(trees) > seq.c:
        raise EngineAssertionError(f"{len(trees)} trees exceed the budget {seq.c}")
    covered = set()
    for t in trees:
        covered |= t.vertices
    if covered != set(g.vertices):
        raise EngineAssertionError("trees do not cover the vertex set")


def validate_tree_cover(tc: TreeCover, g: ColoredMultigraph,
                        budget: Optional[int] = None) -> None:
    """Independently re-check a tree cover against its graph.

    Trusts nothing stored: walks every parent map, confirms each tree edge
    carries the tree's colour, recomputes the induced diameters, and checks
    the coverage, count and radius bounds.  Raises CertificateError on the
    first failure.
    """
    from .errors import CertificateError

    budget = budget if budget is not None else (g.r - 1) * tc.nu
    if len(tc.trees) > budget:
        raise CertificateError(f"{len(tc.trees)} trees exceed budget {budget}")
    n = len(g.vertices)
    covered: set[str] = set()
    for t in tc.trees:
        if t.root not in t.vertices:
            raise CertificateError("root outside tree vertex set")
        if set(t.parents) != set(t.vertices) - {t.root}:
            raise CertificateError("parent map does not span the tree")
        for v, p in t.parents.items():
            if p not in t.vertices:
                raise CertificateError(f"parent {p!r} outside the tree")
            a, b = (v, p) if v < p else (p, v)
            if (a, b, t.color) not in g.edges:
                raise CertificateError(f"tree edge {v}-{p} is not colour {t.color} in G")
        for v in t.parents:
            hops, x = 0, v
            while x != t.root:
                x = t.parents[x]
                hops += 1
                if hops > len(t.vertices):
                    raise CertificateError("parent map contains a cycle")
        measured = _induced_diameter(g, t.color, t.vertices)
        if measured != t.measured_diameter:
            raise CertificateError(
                f"stored diameter {t.measured_diameter} != recomputed {measured}")
        if exact_cmp(measured, exact_mul(2, t.certified_radius)) > 0:
            raise CertificateError("measured diameter exceeds twice the certified radius")
        if measured > 2 * (n - 1):
            raise CertificateError("measured diameter exceeds 2(n-1)")
        covered |= t.vertices
    if covered != set(g.vertices):
        raise CertificateError("trees do not cover the vertex set")


def end_to_end(g: ColoredMultigraph) -> TreeCover:
    """Pick the bundled sequence for (r, alpha(G)), build the paper schedule, cover."""
    from .duality import independence_number
    from .sequences import bundled_sequence

    alpha = independence_number(g, max_vertices=max(40, len(g.vertices)))
    seq = bundled_sequence(g.r, alpha)
    sched = paper_schedule(g.r, len(seq.items))
    return tree_cover(g, seq, sched)
