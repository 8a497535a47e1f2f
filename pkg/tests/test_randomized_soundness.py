"""Randomized soundness sweeps.

Two kinds of check: the algebra compiler against an independent
forbidden-subpath counting oracle on random monomial presentations, and the
theorem checkers against their own conclusions on random sequences (a single
certified-hypotheses run whose image fails would be a soundness bug).
"""

import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from exrep.algebra import build_algebra
from exrep.exceptional import EnumerationConfig, check_recollement_theorem, check_split_theorem, enumerate_bricks
from exrep.fields import RATIONALS
from exrep.modules import ModuleError, thin_module
from exrep.quiver import Arrow, Quiver, RelationExpr
from exrep.recollements import build_recollement
from exrep.split_extensions import build_split_extension


def _chain_quiver(n_vertices: int, extra: list[tuple[int, int]]) -> Quiver:
    vertices = tuple(str(i + 1) for i in range(n_vertices))
    arrows = [Arrow(f"a{i}", vertices[i], vertices[i + 1]) for i in range(n_vertices - 1)]
    for k, (s, t) in enumerate(extra):
        arrows.append(Arrow(f"x{k}", vertices[s], vertices[t]))
    return Quiver(vertices, tuple(arrows))


def _count_paths_avoiding(quiver: Quiver, forbidden: set[tuple[str, ...]]) -> int:
    """Independent oracle: count paths containing no forbidden factor.

    Plain DFS over the (acyclic) quiver; a path dies as soon as any suffix
    matches a forbidden word.
    """
    arrows_from = {}
    for a in quiver.arrows:
        arrows_from.setdefault(a.source, []).append(a)

    def bad(names: tuple[str, ...]) -> bool:
        return any(names[i : i + len(f)] == f for f in forbidden for i in range(len(names)))

    count = len(quiver.vertices)
    stack = [((a.name,), a.target) for a in quiver.arrows]
    while stack:
        names, end = stack.pop()
        if bad(names):
            continue
        count += 1
        for a in arrows_from.get(end, []):
            stack.append((names + (a.name,), a.target))
    return count


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_build_algebra_matches_forbidden_subpath_oracle(data):
    n = data.draw(st.integers(min_value=3, max_value=5))
    extra = []
    if data.draw(st.booleans()) and n >= 4:
        extra.append((0, 2))  # a shortcut arrow keeps the quiver acyclic
    quiver = _chain_quiver(n, extra)
    # random length-two monomial relations among the composable pairs
    pairs = [
        (a.name, b.name)
        for a in quiver.arrows
        for b in quiver.arrows
        if a.target == b.source
    ]
    chosen = [p for p in pairs if data.draw(st.booleans())]
    relations = [RelationExpr(((None, p),)) for p in chosen]
    alg = build_algebra(quiver, relations, RATIONALS)
    assert alg.dim == _count_paths_avoiding(quiver, set(chosen))


def _brick_pool(algebra):
    pool = []
    for k in range(1, algebra.n_vertices + 1):
        for sup in itertools.combinations(algebra.vertices, k):
            try:
                pool.append(thin_module(algebra, sup))
            except ModuleError:
                continue
    return pool


def test_split_theorem_randomized_trials(a3, cycle3, cycle3_ab):
    rng = random.Random(5150)
    trials = 0
    positives = 0
    for base, kernel in ((a3, "alpha"), (cycle3, "gamma"), (cycle3_ab, "gamma")):
        se = build_split_extension(base, [kernel])
        pool = _brick_pool(se.A)
        for _ in range(15):
            seq = rng.sample(pool, rng.randint(1, 3))
            rep = check_split_theorem(se, seq, n_max=12)
            assert not rep.implication_violated, [m.dims for m in seq]
            trials += 1
            if rep.hypotheses_hold:
                positives += 1
                assert rep.conclusion.verdict
    assert trials == 45
    assert positives > 0  # the sweep does exercise the certified branch


def test_recollement_theorem_randomized_trials(a3, a42):
    rng = random.Random(6160)
    cfg = EnumerationConfig()
    for base in (a3, a42):
        for eps in (("1",), ("2",), ("3",), ("2", "3")):
            rec = build_recollement(base, eps)
            pool_bar = [m for m in enumerate_bricks(rec.Abar, cfg).items] if not rec.Abar.is_zero else []
            pool_til = [m for m in enumerate_bricks(rec.Atilde, cfg).items]
            from exrep.exceptional import _lift_module

            pool_bar = [_lift_module(m, rec.Abar) for m in pool_bar]
            pool_til = [_lift_module(m, rec.Atilde) for m in pool_til]
            for _ in range(6):
                sb = rng.sample(pool_bar, rng.randint(0, min(2, len(pool_bar)))) if pool_bar else []
                stt = rng.sample(pool_til, rng.randint(0, min(2, len(pool_til)))) if pool_til else []
                rep = check_recollement_theorem(rec, sb, stt, n_max=12)
                assert not rep.implication_violated
