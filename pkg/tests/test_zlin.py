import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ogkit.zlin import (
    AbGroup,
    AbHom,
    IMat,
    LatticeQuotient,
    ProductSubgroup,
    UnsupportedInstance,
    canonical_of_moduli,
    cokernel,
    cyclic,
    det,
    direct_sum,
    hom_group,
    kernel_subgroup,
    lattices_equal,
    mat,
    smith_normal_form,
    solve_linear,
    solution_lattice,
)


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


def test_snf_fixed_example():
    s = smith_normal_form(mat([[2, 4], [6, 8]]))
    assert s.diagonal() == [2, 4]
    assert s.u @ mat([[2, 4], [6, 8]]) @ s.v == s.d


def test_snf_identity_and_zero():
    assert smith_normal_form(mat([[1, 0], [0, 1]])).diagonal() == [1, 1]
    assert smith_normal_form(mat([[0]])).diagonal() == [0]


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_properties(rows):
    m = mat(rows)
    s = smith_normal_form(m)
    assert s.u @ m @ s.v == s.d
    assert abs(det(s.u)) == 1
    assert abs(det(s.v)) == 1
    assert s.u @ s.u_inv == IMat.identity(m.nrows)
    assert s.v @ s.v_inv == IMat.identity(m.ncols)
    diag = s.diagonal()
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    for i in range(s.d.nrows):
        for j in range(s.d.ncols):
            if i != j:
                assert s.d.data[i][j] == 0


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_cokernel_invariant_under_unimodular_moves(rows):
    m = mat(rows)
    g = cokernel(m)
    # permute rows and add one row to another: cokernel must not change
    perm = list(reversed(range(m.nrows)))
    m2 = IMat.from_rows([m.data[i] for i in perm], ncols=m.ncols)
    assert cokernel(m2) == g
    if m.nrows >= 2:
        rows3 = [list(r) for r in m.data]
        rows3[0] = [a + 3 * b for a, b in zip(rows3[0], rows3[1])]
        assert cokernel(mat(rows3)) == g


def test_cokernel_examples():
    assert cokernel(mat([[2]])) == AbGroup((2,))
    assert cokernel(IMat.from_cols([], nrows=3)) == AbGroup((0, 0, 0))
    assert cokernel(mat([[2, 0], [0, 3]])) == AbGroup((6,))


def test_abgroup_canonical_form_enforced():
    with pytest.raises(ValueError):
        AbGroup((1,))
    with pytest.raises(ValueError):
        AbGroup((4, 2))
    with pytest.raises(ValueError):
        AbGroup((0, 2))
    with pytest.raises(ValueError):
        AbGroup((2, 3))


def test_kernel_examples():
    # x -> 2x on Z has trivial kernel
    k, emb = kernel_subgroup(AbHom(AbGroup((0,)), AbGroup((0,)), mat([[2]])))
    assert k.is_trivial()
    # reduction Z/4 -> Z/2 has kernel C2 generated by 2
    k, emb = kernel_subgroup(AbHom(AbGroup((4,)), AbGroup((2,)), mat([[1]])))
    assert k == AbGroup((2,))
    assert emb.apply((1,)) == (2,)
    # (a, b) -> a + b on Z^2 has kernel Z
    k, emb = kernel_subgroup(AbHom(AbGroup((0, 0)), AbGroup((0,)), mat([[1, 1]])))
    assert k == AbGroup((0,))
    v = emb.apply((1,))
    assert v[0] + v[1] == 0 and v != (0, 0)


def test_kernel_embedding_is_injective_and_lands_in_kernel():
    h = AbHom(AbGroup((4, 4)), AbGroup((2,)), mat([[1, 1]]))
    k, emb = kernel_subgroup(h)
    assert emb.is_injective()
    seen = set()
    for x in k.elements():
        v = emb.apply(x)
        assert h.apply(v) == (0,)
        seen.add(v)
    assert len(seen) == k.order()
    # |dom| = |ker| * |im| for finite groups
    im = {h.apply(v) for v in h.dom.elements()}
    assert h.dom.order() == k.order() * len(im)


def test_hom_group_examples():
    assert hom_group(AbGroup((2,)), AbGroup((2,))).group == AbGroup((2,))
    assert hom_group(AbGroup((0,)), AbGroup((3,))).group == AbGroup((3,))
    assert hom_group(AbGroup((2,)), AbGroup((0,))).group.is_trivial()


def brute_hom_count(a: AbGroup, b: AbGroup) -> int:
    count = 0
    for images in itertools.product(list(b.elements()), repeat=a.ngens):
        ok = True
        for j, d in enumerate(a.factors):
            if d == 0:
                continue
            v = b.reduce([d * x for x in images[j]])
            if any(v):
                ok = False
                break
        if ok:
            count += 1
    return count


@pytest.mark.parametrize(
    "a,b",
    [
        (AbGroup((2,)), AbGroup((4,))),
        (AbGroup((4,)), AbGroup((2,))),
        (AbGroup((2, 4)), AbGroup((2,))),
        (AbGroup((2, 2)), AbGroup((2, 4))),
        (AbGroup((3,)), AbGroup((6,))),
        (AbGroup((2, 8)), AbGroup((4,))),
    ],
)
def test_hom_group_matches_brute_force(a, b):
    hg = hom_group(a, b)
    homs = list(hg.enumerate())
    assert len(homs) == hg.group.order() == brute_hom_count(a, b)
    assert len({h.matrix for h in homs}) == len(homs)


def test_hom_group_enumeration_respects_constraints():
    # homs C4 -> C4 with 2 * entry == 0, i.e. image killed by 2
    hg = hom_group(AbGroup((4,)), AbGroup((4,)), [([2], 4)])
    entries = sorted(h.matrix.data[0][0] for h in hg.enumerate())
    assert entries == [0, 2]


def test_solve_linear_examples():
    # 2x == 0 mod 4
    res = solve_linear(mat([[2]]), [0], [4])
    assert res is not None
    x, klat = res
    assert (2 * x[0]) % 4 == 0
    gens = [klat.col(j)[0] % 4 for j in range(klat.ncols)]
    assert set(g % 4 for g in gens if g % 4) == {2}
    # 2x == 1 mod 4 has no solution
    assert solve_linear(mat([[2]]), [1], [4]) is None
    # x + y = 3 over Z
    res = solve_linear(mat([[1, 1]]), [3])
    assert res is not None
    x, klat = res
    assert x[0] + x[1] == 3
    assert klat.ncols >= 1
    for j in range(klat.ncols):
        c = klat.col(j)
        assert c[0] + c[1] == 0


def test_solution_lattice_contains_only_solutions():
    m = mat([[2, 3], [0, 4]])
    lat = solution_lattice(m, [6, 0])
    for j in range(lat.ncols):
        v = lat.col(j)
        mv = m.vec(v)
        assert mv[0] % 6 == 0 and mv[1] == 0


def test_direct_sum_crt():
    ds = direct_sum([AbGroup((2,)), AbGroup((3,))])
    assert ds.group == AbGroup((6,))
    for i, g in enumerate(ds.summands):
        comp = ds.injections[i].then(ds.projections[i])
        assert comp == AbHom.identity(g)
    zero = ds.injections[0].then(ds.projections[1])
    assert zero.is_zero()


def test_direct_sum_pack_unpack_roundtrip():
    ds = direct_sum([AbGroup((2, 4)), AbGroup((0,)), AbGroup(())])
    parts = [(1, 3), (5,), ()]
    v = ds.pack(parts)
    assert ds.unpack(v) == [(1, 3), (5,), ()]


def test_canonical_of_moduli_roundtrip():
    g, to_c, from_c = canonical_of_moduli([2, 3, 0])
    assert g == AbGroup((6, 0))
    for j in range(3):
        e = [1 if i == j else 0 for i in range(3)]
        back = from_c.vec(to_c.vec(e))
        diff = [a - b for a, b in zip(back, e)]
        assert diff[0] % 2 == 0 and diff[1] % 3 == 0 and diff[2] == 0


def test_product_subgroup_invariance_condition():
    # pairs (x, y) in C4 x C4 with x + 2y == 0 mod 4
    ps = ProductSubgroup([4, 4], [([1, 2], 4)])
    vecs = sorted(ps.enumerate_vectors())
    assert all((x + 2 * y) % 4 == 0 for x, y in vecs)
    assert len(vecs) == ps.group.order() == 4
    for v in vecs:
        assert ps.vector_of(ps.coords_of(v)) == v


def test_abhom_rejects_ill_defined():
    with pytest.raises(ValueError):
        AbHom(AbGroup((2,)), AbGroup((0,)), mat([[1]]))
    with pytest.raises(ValueError):
        AbHom(AbGroup((2,)), AbGroup((4,)), mat([[1]]))


def test_abhom_iso_detection():
    swap = AbHom(AbGroup((0, 0)), AbGroup((0, 0)), mat([[0, 1], [1, 0]]))
    assert swap.is_iso()
    double = AbHom(AbGroup((0,)), AbGroup((0,)), mat([[2]]))
    assert double.is_injective() and not double.is_surjective()
    crt = AbHom(AbGroup((6,)), AbGroup((6,)), mat([[5]]))
    assert crt.is_iso()


def test_lattices_equal():
    a = IMat.from_cols([[2, 0], [0, 3]], nrows=2)
    b = IMat.from_cols([[2, 3], [2, -3], [0, 3]], nrows=2)
    assert lattices_equal(2, a, b)
    c = IMat.from_cols([[2, 0], [0, 6]], nrows=2)
    assert not lattices_equal(2, a, c)


def test_lattice_quotient_coords():
    # Z^2 / <(2,0),(0,4)> with explicit class computation
    lq = LatticeQuotient(2, IMat.identity(2), IMat.from_cols([[2, 0], [0, 4]], nrows=2))
    assert lq.group == AbGroup((2, 4))
    z = lq.coords_of([2, 4])
    assert z == lq.group.zero()
    one = lq.coords_of([1, 0])
    assert one != lq.group.zero()


def test_elements_enumeration_guard():
    with pytest.raises(UnsupportedInstance):
        list(AbGroup((0,)).elements())
    assert list(AbGroup(()).elements()) == [()]
    assert sorted(AbGroup((2, 2)).elements()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_cyclic_constructor():
    assert cyclic(1).is_trivial()
    assert cyclic(0) == AbGroup((0,))
    assert cyclic(6) == AbGroup((6,))
