import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from stuquandle import algebra, rna
from stuquandle.algebra import AffineParams, affine, check_axioms, make_affine, units
from stuquandle.coloring import (
    count_colorings,
    count_homomorphisms,
    list_colorings,
    presentation,
    satisfies,
    simplify,
)
from stuquandle.diagram import (
    StuckDiagram,
    braid_closure,
    is_planar,
    signed_sticking_number,
    validate,
)

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def affine_structures(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    a = draw(st.sampled_from(units(n)))
    b = draw(st.integers(0, max(n - 1, 0)))
    e = draw(st.integers(0, max(n - 1, 0)))
    return make_affine(AffineParams(n, a, b, e))


@st.composite
def braids(draw, max_strands=4, max_len=7):
    k = draw(st.integers(2, max_strands))
    word = draw(st.lists(st.tuples(st.sampled_from("ABPN"), st.integers(1, k - 1)), max_size=max_len))
    return k, word


def closure(b):
    k, word = b
    return braid_closure(word, k)


@SETTINGS
@given(affine_structures(max_n=16))
def test_affine_always_passes(X):
    assert check_axioms(X).passed


@SETTINGS
@given(affine_structures(), st.randoms(use_true_random=False))
def test_relabel_gives_isomorphic_structure(X, rnd):
    perm = list(range(X.n))
    rnd.shuffle(perm)
    Y = X.relabel(perm)
    assert check_axioms(Y).passed
    f = algebra.are_isomorphic(X, Y)
    assert f is not None
    for name in algebra.OPERATIONS:
        tx, ty = getattr(X, name), getattr(Y, name)
        assert all(f[tx[a][b]] == ty[f[a]][f[b]] for a in range(X.n) for b in range(X.n))


@SETTINGS
@given(affine_structures(max_n=12), st.sampled_from(["row", "column"]))
def test_block_matrix_round_trip(X, orientation):
    text = algebra.serialize_block_matrix(X, orientation)
    assert algebra.parse_block_matrix(text, orientation=orientation) == X


@SETTINGS
@given(braids())
def test_braid_closures_are_valid_planar(b):
    d = closure(b)
    info = validate(d)
    assert is_planar(d)
    assert info.semiarcs >= info.components


@SETTINGS
@given(braids(max_len=5), affine_structures(max_n=3))
def test_solver_matches_naive(b, X):
    d = closure(b)
    rows = [(c.kind.value, *c.ports) for c in d.crossings]
    tables = tuple(X.tables()[k] for k in algebra.OPERATIONS)
    assert count_colorings(d, X) == oracles.naive_colorings(rows, d.free_circles, tables)


@SETTINGS
@given(braids(), affine_structures(max_n=6), st.randoms(use_true_random=False))
def test_relabel_and_reorder_invariance(b, X, rnd):
    d = closure(b)
    ids = d.semiarc_ids()
    shuffled = ids[:]
    rnd.shuffle(shuffled)
    crossings = list(d.relabel(dict(zip(ids, shuffled))).crossings)
    rnd.shuffle(crossings)
    e = StuckDiagram(tuple(crossings), d.free_circles)
    assert signed_sticking_number(e) == signed_sticking_number(d)
    assert count_colorings(e, X) == count_colorings(d, X)


@SETTINGS
@given(braids(), affine_structures(max_n=6))
def test_constant_colorings_bound(b, X):
    d = closure(b)
    if d.crossings or d.free_circles:
        assert count_colorings(d, X) >= X.n


@SETTINGS
@given(braids(max_len=5), braids(max_len=5), affine_structures(max_n=5))
def test_disjoint_union_multiplies(b1, b2, X):
    d1, d2 = closure(b1), closure(b2)
    assert count_colorings(d1.disjoint_union(d2), X) == count_colorings(d1, X) * count_colorings(d2, X)


@SETTINGS
@given(braids(), st.data(), affine_structures(max_n=6))
def test_omega2_insertion(b, data, X):
    k, word = b
    pos = data.draw(st.integers(0, len(word)))
    i = data.draw(st.integers(1, k - 1))
    pair = data.draw(st.sampled_from([[("A", i), ("B", i)], [("B", i), ("A", i)]]))
    longer = word[:pos] + pair + word[pos:]
    assert count_colorings(braid_closure(longer, k), X) == count_colorings(braid_closure(word, k), X)


@SETTINGS
@given(braids(), st.data(), affine_structures(max_n=6))
def test_stuck_commutes_with_classical_on_same_strands(b, data, X):
    # stuck crossing slides through a classical crossing on the same two strands
    k, word = b
    pos = data.draw(st.integers(0, len(word)))
    i = data.draw(st.integers(1, k - 1))
    s = data.draw(st.sampled_from("PN"))
    c = data.draw(st.sampled_from("AB"))
    w1 = word[:pos] + [(s, i), (c, i)] + word[pos:]
    w2 = word[:pos] + [(c, i), (s, i)] + word[pos:]
    assert count_colorings(braid_closure(w1, k), X) == count_colorings(braid_closure(w2, k), X)


@SETTINGS
@given(braids(max_len=5), affine_structures(max_n=4))
def test_listed_colorings_satisfy_constraints(b, X):
    d = closure(b)
    found = list_colorings(d, X, limit=50)
    assert len(found) == min(count_colorings(d, X), 50)
    for c in found:
        assert satisfies(d, X, c.as_dict())


@SETTINGS
@given(braids(max_strands=3, max_len=3), st.sampled_from(
    [affine(2, 1, 0, 1), affine(3, 2, 1, 0), affine(3, 2, 2, 1), affine(3, 1, 2, 0)]
))
def test_simplify_is_sound(b, X):
    d = closure(b)
    s = simplify(presentation(d))
    if X.n ** len(s.generators) <= 3 ** 7:
        assert count_homomorphisms(s, X) == count_colorings(d, X)


@st.composite
def arc_diagrams(draw):
    strands = draw(st.lists(st.integers(1, 6), min_size=1, max_size=3))
    slots = [(str(i), p) for i, length in enumerate(strands) for p in range(length)]
    order = draw(st.permutations(slots))
    m = draw(st.integers(0, min(4, len(slots) // 2)))
    bonds = []
    for j in range(m):
        e1, e2 = order[2 * j], order[2 * j + 1]
        bonds.append(rna.Bond(e1, e2, draw(st.sampled_from([rna.PARALLEL, rna.ANTIPARALLEL]))))
    return rna.ArcDiagram(tuple(rna.Strand(str(i), n) for i, n in enumerate(strands)), tuple(bonds))


@SETTINGS
@given(arc_diagrams())
def test_rna_output_valid(a):
    d = rna.to_stuck_diagram(a)
    info = validate(d)
    assert is_planar(d)
    assert rna.stuck_crossing_count(d) == len(a.bonds)
    assert info.components == len(a.strands)
    positive = sum(b.orientation == rna.PARALLEL for b in a.bonds)
    assert signed_sticking_number(d) == positive - (len(a.bonds) - positive)


@SETTINGS
@given(arc_diagrams(), st.randoms(use_true_random=False), affine_structures(max_n=4))
def test_rna_invariant_under_relabel_and_reorder(a, rnd, X):
    names = [s.id for s in a.strands]
    new = {old: f"s{old}x" for old in names}
    bonds = [rna.Bond((new[b.end2[0]], b.end2[1]), (new[b.end1[0]], b.end1[1]), b.orientation) for b in a.bonds]
    rnd.shuffle(bonds)
    b = rna.ArcDiagram(tuple(rna.Strand(new[s.id], s.length) for s in a.strands), tuple(bonds))
    assert rna.rna_invariant(a, X) == rna.rna_invariant(b, X)


def test_structure_count_product_rule():
    # singquandle and stuck halves are chosen independently for each quandle
    for S in ([[0, 0], [1, 1]],):
        tabs = [[list(t[:2]), list(t[2:])] for t in itertools.product(range(2), repeat=4)]
        sing = sum(oracles.sing_ok(S, a, b) for a in tabs for b in tabs)
        stuck = sum(oracles.stuck_ok(S, a, b) for a in tabs for b in tabs)
        assert sing * stuck == 256
