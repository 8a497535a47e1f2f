import pytest

from exrep.algebra import (
    Algebra,
    AlgebraError,
    build_algebra,
    corner_algebra,
    opposite_algebra,
    quotient_by_idempotent_ideal,
    radical_power_zero_exponent,
    verify_algebra_axioms,
)
from exrep.fields import RATIONALS
from exrep.fileio import parse_algebra_file
from exrep.goldens import fixture_text
from exrep.quiver import Arrow, Quiver, QuiverError, RelationExpr


def rebuild(name, field_line=None):
    text = fixture_text(f"{name}.alg")
    if field_line:
        text = text.replace("field Q", field_line)
    parsed, quiver, relations, field = parse_algebra_file(text)
    return build_algebra(quiver, relations, field, name=parsed)


def test_dimensions_of_bundled_algebras(a3, a3_ab, cycle3, cycle3_ab, a42):
    assert a3.dim == 6
    assert a3_ab.dim == 5
    assert cycle3.dim == 6
    assert cycle3_ab.dim == 9
    assert a42.dim == 4


def test_a3_basis_normal_forms(a3):
    labels = [a3.basis_label(i) for i in range(a3.dim)]
    assert labels == ["e_1", "e_2", "e_3", "alpha", "beta", "alpha*beta"]


def test_cycle3_radical_squares_to_zero(cycle3):
    assert radical_power_zero_exponent(cycle3) == 2
    i, j = cycle3.arrow_basis_index("alpha"), cycle3.arrow_basis_index("beta")
    assert cycle3.mult(i, j) == {}


def test_dimensions_match_over_f2():
    for name in ("a3", "a3_ab", "cycle3", "cycle3_ab", "a42"):
        q_alg = rebuild(name)
        f_alg = rebuild(name, "field F 2")
        assert q_alg.dim == f_alg.dim, name


def test_non_finite_dimensional_rejected():
    quiver = Quiver(("1",), (Arrow("loop", "1", "1"),))
    with pytest.raises(AlgebraError, match="finite-dimensional"):
        build_algebra(quiver, [], RATIONALS, max_len=12)
    # a truncated loop is fine
    alg = build_algebra(quiver, [RelationExpr(((None, ("loop", "loop")),))], RATIONALS)
    assert alg.dim == 2


def test_short_relation_rejected():
    quiver = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    with pytest.raises(QuiverError, match="length"):
        build_algebra(quiver, [RelationExpr(((None, ("a",)),))], RATIONALS)


def test_peirce_partition(a3, cycle3_ab):
    for alg in (a3, cycle3_ab):
        total = 0
        for u in range(alg.n_vertices):
            for v in range(alg.n_vertices):
                total += sum(1 for b in alg.basis if (b.source, b.target) == (u, v))
        assert total == alg.dim


def test_corner_full_is_identity(a3):
    corner, morph = corner_algebra(a3, a3.vertices)
    assert corner.dim == a3.dim
    assert corner.table == a3.table
    assert morph.verify() == []


def test_corner_23_is_the_two_vertex_path_algebra(a3):
    corner, _ = corner_algebra(a3, ("2", "3"))
    assert corner.dim == 3
    assert corner.vertices == ("2", "3")
    assert sorted(b.degree for b in corner.basis) == [0, 0, 1]
    reference = build_algebra(
        Quiver(("2", "3"), (Arrow("beta", "2", "3"),)), [], RATIONALS
    )
    assert corner.fingerprint == reference.fingerprint


def test_opposite_of_commutative_table_is_itself():
    semisimple = build_algebra(Quiver(("1", "2", "3"), ()), [], RATIONALS)
    opp, _ = opposite_algebra(semisimple)
    assert opp.table == semisimple.table


def test_corner_13_contains_length_two_path(a3):
    corner, morph = corner_algebra(a3, ("1", "3"))
    assert corner.dim == 3
    degrees = sorted(b.degree for b in corner.basis)
    assert degrees == [0, 0, 2]
    assert morph.verify() == []
    assert verify_algebra_axioms(corner) == []


def test_corner_empty_rejected(a3):
    with pytest.raises(AlgebraError):
        corner_algebra(a3, ())


def test_quotient_by_all_vertices_is_zero(a3):
    quot, _ = quotient_by_idempotent_ideal(a3, a3.vertices)
    assert quot.dim == 0
    assert quot.is_zero


def test_quotient_23(a3):
    quot, morph = quotient_by_idempotent_ideal(a3, ("2", "3"))
    assert quot.dim == 1
    assert quot.vertices == ("1",)
    assert morph.verify() == []


def test_quotient_2(a3):
    quot, _ = quotient_by_idempotent_ideal(a3, ("2",))
    assert quot.dim == 2
    assert quot.vertices == ("1", "3")
    assert verify_algebra_axioms(quot) == []


def test_opposite_involution(a3, cycle3_ab):
    for alg in (a3, cycle3_ab):
        opp, morph = opposite_algebra(alg)
        assert morph.verify() == []
        assert verify_algebra_axioms(opp) == []
        opp2, _ = opposite_algebra(opp)
        assert opp2.table == alg.table


def test_opposite_of_a3_reverses_arrows(a3):
    opp, _ = opposite_algebra(a3)
    i = a3.arrow_basis_index("alpha")
    assert (opp.basis[i].source, opp.basis[i].target) == (1, 0)


def test_axioms_catch_broken_idempotent(a3):
    table = [[dict(cell) for cell in row] for row in a3.table]
    e1 = a3.idempotent_index[0]
    table[e1][e1] = {}
    broken = Algebra(a3.field, a3.vertices, a3.basis, table, name="broken")
    diags = verify_algebra_axioms(broken)
    assert any("idempotent" in d for d in diags)


def test_axioms_catch_broken_associativity(cycle3_ab):
    # kill (beta*gamma) * alpha while beta * (gamma*alpha) still reaches the
    # length-three normal form: (beta, gamma, alpha) stops associating
    alg = cycle3_ab
    bg = next(i for i, b in enumerate(alg.basis) if b.path == (1, 2))
    al = alg.arrow_basis_index("alpha")
    table = [[dict(cell) for cell in row] for row in alg.table]
    table[bg][al] = {}
    broken = Algebra(alg.field, alg.vertices, alg.basis, table, name="broken", quiver=alg.quiver)
    diags = verify_algebra_axioms(broken)
    assert any("associativity" in d for d in diags)
    assert any("beta" in d and "gamma" in d and "alpha" in d for d in diags)


def test_commutative_square_with_commutativity_relation():
    quiver = Quiver(
        ("1", "2", "3", "4"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "4"), Arrow("c", "1", "3"), Arrow("d", "3", "4")),
    )
    rel = RelationExpr(((None, ("a", "b")), (RATIONALS.neg(RATIONALS.one()), ("c", "d"))))
    alg = build_algebra(quiver, [rel], RATIONALS)
    assert alg.dim == 9
    i, j = alg.arrow_basis_index("a"), alg.arrow_basis_index("b")
    k, l = alg.arrow_basis_index("c"), alg.arrow_basis_index("d")
    assert alg.mult(i, j) == alg.mult(k, l)  # both reduce to the same normal form
    assert verify_algebra_axioms(alg) == []


def test_zero_algebra_is_legal(a3):
    quot, _ = quotient_by_idempotent_ideal(a3, a3.vertices)
    assert quot.dim == 0
    assert verify_algebra_axioms(quot) == []
    assert quot.radical_indices == ()
