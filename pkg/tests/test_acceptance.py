"""Acceptance gate: one test and one printed pass/fail line per criterion.

Every check runs in exact arithmetic at zero tolerance.  The expected
tables are the reference values fixed for this build; where a reference
value disagrees with exact computation the test fails and the assertion
message shows both sides (see the repository README for the analysis and
for the independent oracles that pin down the computed values).

Component conventions for the three-variable closed forms (documented
here and in the README): 1-cochain slots are (c0, c1, c2); 2-cochain
slots are cyclic, (f1, f2, f3) = (c(1,2), c(2,0), c(0,1)).  The recorded
sign normalization for the logarithmic top operator is (+1, -1) on its
two printed terms.
"""

import random
from itertools import combinations

import pytest

from logpoisson.cohomology import (
    SliceWindow,
    cohomology_dims,
    compare_tables,
    compute_table,
    find_primitive,
)
from logpoisson.complexes import (
    Cochain,
    basis_for,
    differential,
    log_derham_complex,
    log_derham_differential,
    log_hamiltonian_cochain_map,
    log_poisson_complex,
    poisson_complex,
    two_form_cochain,
)
from logpoisson.logforms import (
    LogBasis,
    OneForm,
    form_bracket,
    log_hamiltonian,
    log_symplectic_test,
)
from logpoisson.poisson import LogDivisorSpec, PoissonStructure
from logpoisson.poly import Poly, parse_poly
from conftest import random_poly

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


def p2(t):
    return parse_poly(t, XY)


def p3(t):
    return parse_poly(t, XYZ)


def setup_x():
    P = PoissonStructure(XY, {(0, 1): p2("x")})
    return P, basis_for(P, LogDivisorSpec.normalize([p2("x")]))


def setup_x2():
    P = PoissonStructure(XY, {(0, 1): p2("x^2")})
    return P, basis_for(P, LogDivisorSpec.normalize([p2("x^2")]))


def setup_xyz():
    P = PoissonStructure(XYZ, {(1, 2): p3("x*y*z")})
    return P, basis_for(P, LogDivisorSpec.normalize([p3("x"), p3("y"), p3("z")]))


def report(number, ok, text):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {text}")


# cached tables --------------------------------------------------------------

_TABLES = {}


def table(name):
    if name in _TABLES:
        return _TABLES[name]
    if name.startswith("ex1"):
        P, B = setup_x()
        window = SliceWindow(8)
        built = {
            "ex1-log": compute_table(log_poisson_complex(P, B), [0, 1, 2], window),
            "ex1-poisson": compute_table(poisson_complex(P), [0, 1, 2], window),
            "ex1-derham": compute_table(log_derham_complex(B), [0, 1, 2], window),
        }
    elif name.startswith("ex2"):
        P, B = setup_x2()
        window = SliceWindow(8)
        built = {
            "ex2-log": compute_table(log_poisson_complex(P, B), [0, 1, 2], window),
            "ex2-poisson": compute_table(poisson_complex(P), [0, 1, 2], window),
        }
    else:
        P, B = setup_xyz()
        window = SliceWindow(6)
        built = {
            "ex3-log": compute_table(log_poisson_complex(P, B), [3], window),
            "ex3-poisson": compute_table(poisson_complex(P), [3], window),
        }
    _TABLES.update(built)
    return _TABLES[name]


def test_criterion_1_first_structure_log_dims():
    t = table("ex1-log")
    expected = {
        0: [1, 0, 0, 0, 0, 0, 0, 0, 0],
        1: [1, 0, 0, 0, 0, 0, 0, 0, 0],
        2: [0] * 9,
    }
    got = {k: t.dims(k) for k in (0, 1, 2)}
    ok = got == expected
    report(1, ok, "log Poisson dims of the divisor-x structure at D=8")
    assert got == expected


def test_criterion_2_first_structure_three_tables_agree():
    d1 = compare_tables(table("ex1-log"), table("ex1-poisson"))
    d2 = compare_tables(table("ex1-log"), table("ex1-derham"))
    ok = d1.equal and d2.equal
    report(2, ok, "Poisson and log de Rham tables equal the log Poisson table")
    assert d1.equal, d1.mismatches
    assert d2.equal, d2.mismatches


def test_criterion_3_first_structure_is_log_symplectic():
    P, B = setup_x()
    rep = log_symplectic_test(P, B)
    ok = rep.is_log_symplectic and rep.determinant.is_constant() \
        and not rep.determinant.is_zero()
    report(3, ok, "nondegeneracy verdict with constant determinant")
    assert ok, rep


def test_criterion_4_second_structure_tables():
    expected_h1 = [2, 2, 1, 1, 1, 1, 1, 1, 1]
    expected_h2 = [1] * 9
    t_log, t_poi = table("ex2-log"), table("ex2-poisson")
    got = {
        "h1_log": t_log.dims(1),
        "h2_log": t_log.dims(2),
        "h1_poisson": t_poi.dims(1),
        "h2_poisson": t_poi.dims(2),
    }
    ok = (
        got["h1_log"] == expected_h1
        and got["h2_log"] == expected_h2
        and got["h1_poisson"] == got["h1_log"]
        and got["h2_poisson"] == got["h2_log"]
    )
    report(4, ok, "divisor-x^2 structure: reference H1/H2 tables at D=8")
    assert got["h2_log"] == expected_h2
    assert got["h1_poisson"] == got["h1_log"]
    assert got["h2_poisson"] == got["h2_log"]
    assert got["h1_log"] == expected_h1, (
        "computed H1 per-degree dims differ from the reference table: "
        f"computed {got['h1_log']}, reference {expected_h1}; the computed"
        " table is pinned by the dense oracle in test_cohomology"
    )


def test_criterion_5_equality_without_nondegeneracy():
    P, B = setup_x2()
    rep = log_symplectic_test(P, B)
    diff = compare_tables(table("ex2-log"), table("ex2-poisson"))
    ok = (not rep.is_log_symplectic) and rep.determinant == p2("x^2") and diff.equal
    report(5, ok, "tables agree although the map is degenerate (det x^2)")
    assert not rep.is_log_symplectic
    assert rep.determinant == p2("x^2")
    assert diff.equal, diff.mismatches


def test_criterion_6_third_structure_top_tables():
    expected_log = [1, 3, 3, 3, 3, 3, 3]
    expected_poisson = [1, 3, 9, 9, 9, 9, 9]
    t_log, t_poi = table("ex3-log"), table("ex3-poisson")
    got_log, got_poi = t_log.dims(3), t_poi.dims(3)
    mismatch_from = min(
        (d for d in range(7) if got_log[d] != got_poi[d]), default=None
    )
    ok = (
        got_log == expected_log
        and t_log.cumulative(3) == 19
        and got_poi == expected_poisson
        and t_poi.cumulative(3) == 49
        and mismatch_from == 2
    )
    report(6, ok, "divisor-xyz structure: reference top cohomology tables at D=6")
    assert mismatch_from is not None, "tables must differ"
    assert got_log == expected_log and t_log.cumulative(3) == 19, (
        "computed log table differs from the reference: computed "
        f"{got_log} (total {t_log.cumulative(3)}), reference {expected_log}"
        " (total 19); the computed value is pinned by the enumeration oracle"
        " in test_cohomology"
    )
    assert got_poi == expected_poisson and t_poi.cumulative(3) == 49, (
        "computed Poisson table differs from the reference: computed "
        f"{got_poi} (total {t_poi.cumulative(3)}), reference {expected_poisson}"
        " (total 49)"
    )
    assert mismatch_from == 2


def test_criterion_7_prequantization():
    P1, B1 = setup_x()
    L1 = log_poisson_complex(P1, B1)
    pi1 = two_form_cochain(P1, B1)
    witness = find_primitive(L1, pi1, SliceWindow(8))
    first_ok = witness is not None and differential(L1, witness) == pi1

    P2, B2 = setup_x2()
    L2 = log_poisson_complex(P2, B2)
    pi2 = two_form_cochain(P2, B2)
    witness2 = find_primitive(L2, pi2, SliceWindow(8))
    second_ok = witness2 is None  # reference expects a persistent obstruction

    report(7, first_ok and second_ok,
           "first structure prequantizable; second structure obstructed")
    assert first_ok, "no verified witness for the divisor-x structure"
    assert second_ok, (
        "the induced two-form of the divisor-x^2 structure has the exact"
        f" primitive {witness2!r} (its value x is a coboundary), so no"
        " obstruction report is produced"
    )


# criterion 8: property suites ------------------------------------------------


def _random_cochain(rng, data, k, max_degree=4):
    comps = {}
    for tup in combinations(range(data.r), k):
        comps[tup] = random_poly(rng, data.nvars, max_degree, max_terms=3)
    return Cochain(k, data.r, data.nvars, comps)


def _all_complexes():
    out = []
    for P, B in (setup_x(), setup_x2(), setup_xyz()):
        out += [log_poisson_complex(P, B), poisson_complex(P), log_derham_complex(B)]
    return out


def _check_d_squared(rng):
    for data in _all_complexes():
        for k in range(data.r):
            for _ in range(50):
                c = _random_cochain(rng, data, k)
                if not differential(data, differential(data, c)).is_zero():
                    return False
    return True


def _check_jacobi(rng):
    for P, B in (setup_x(), setup_x2(), setup_xyz()):
        if P.jacobi_failures():
            return False
        for _ in range(50):
            f, g, h = (random_poly(rng, P.n, 4, max_terms=3) for _ in range(3))
            if not (P.bracket(f, P.bracket(g, h)) + P.bracket(g, P.bracket(h, f))
                    + P.bracket(h, P.bracket(f, g))).is_zero():
                return False
        for _ in range(50):
            forms = [
                OneForm(tuple(random_poly(rng, B.n, 2, max_terms=2)
                              for _ in range(B.n)))
                for _ in range(3)
            ]
            a, b, c = forms
            total = (
                form_bracket(P, B, a, form_bracket(P, B, b, c))
                + form_bracket(P, B, b, form_bracket(P, B, c, a))
                + form_bracket(P, B, c, form_bracket(P, B, a, b))
            )
            if not total.is_zero():
                return False
    return True


def _check_leibniz(rng):
    for P, B in (setup_x(), setup_x2(), setup_xyz()):
        for _ in range(50):
            alpha = OneForm(tuple(random_poly(rng, B.n, 3, max_terms=2)
                                  for _ in range(B.n)))
            beta = OneForm(tuple(random_poly(rng, B.n, 3, max_terms=2)
                                 for _ in range(B.n)))
            a = random_poly(rng, B.n, 3, max_terms=3)
            lhs = form_bracket(P, B, alpha, beta.scale(a))
            rhs = beta.scale(log_hamiltonian(P, B, alpha).apply(a)) \
                + form_bracket(P, B, alpha, beta).scale(a)
            if not (lhs - rhs).is_zero():
                return False
    return True


def _check_anchor_homomorphism(rng):
    for P, B in (setup_x(), setup_x2(), setup_xyz()):
        for _ in range(13):
            alpha = OneForm(tuple(random_poly(rng, B.n, 3, max_terms=2)
                                  for _ in range(B.n)))
            beta = OneForm(tuple(random_poly(rng, B.n, 3, max_terms=2)
                                 for _ in range(B.n)))
            da = log_hamiltonian(P, B, alpha)
            db = log_hamiltonian(P, B, beta)
            dbr = log_hamiltonian(P, B, form_bracket(P, B, alpha, beta))
            for _ in range(4):
                f = random_poly(rng, B.n, 4, max_terms=3)
                if dbr.apply(f) != da.apply(db.apply(f)) - db.apply(da.apply(f)):
                    return False
    return True


def _check_chain_map(rng):
    for P, B in (setup_x(), setup_x2(), setup_xyz()):
        L = log_poisson_complex(P, B)
        LD = log_derham_complex(B)
        for k in range(B.n):
            for _ in range(17):
                omega = _random_cochain(rng, LD, k)
                lhs = differential(L, log_hamiltonian_cochain_map(P, B, omega))
                rhs = log_hamiltonian_cochain_map(P, B, log_derham_differential(B, omega))
                if not (lhs + rhs).is_zero():
                    return False
    return True


# reference closed forms, written with their published component slots.
# two-variable operators need no conversion; three-variable ones use the
# cyclic slots described in the module docstring.


def _reference_two_var():
    x, x2, two_x = p2("x"), p2("x^2"), p2("2*x")
    return {
        "log/x": (
            lambda f: (f.partial(1), -x * f.partial(0)),
            lambda f1, f2: f2.partial(1) + x * f1.partial(0),
        ),
        "poisson/x": (
            lambda f: (x * f.partial(1), -x * f.partial(0)),
            lambda f1, f2: x * f2.partial(1) + x * f1.partial(0) - f1,
        ),
        "log/x^2": (
            lambda f: (x * f.partial(1), -x2 * f.partial(0)),
            lambda f1, f2: x * f2.partial(1) + x2 * f1.partial(0) - x * f1,
        ),
        "poisson/x^2": (
            lambda f: (x2 * f.partial(1), -x2 * f.partial(0)),
            lambda f1, f2: x2 * f1.partial(0) + x2 * f2.partial(1) - two_x * f1,
        ),
    }


def _cyclic_to_lex(f1, f2, f3):
    # (c(1,2), c(2,0), c(0,1)) -> components on increasing tuples
    return {(1, 2): f1, (0, 2): -f2, (0, 1): f3}


def _check_two_var_formulas(rng):
    P1, B1 = setup_x()
    P2, B2 = setup_x2()
    engines = {
        "log/x": log_poisson_complex(P1, B1),
        "poisson/x": poisson_complex(P1),
        "log/x^2": log_poisson_complex(P2, B2),
        "poisson/x^2": poisson_complex(P2),
    }
    refs = _reference_two_var()
    for label, data in engines.items():
        d0_ref, d1_ref = refs[label]
        for _ in range(50):
            f = random_poly(rng, 2, 4, max_terms=3)
            got = differential(data, Cochain(0, 2, 2, {(): f}))
            a, b = d0_ref(f)
            if got != Cochain(1, 2, 2, {(0,): a, (1,): b}):
                return False
            f1, f2 = (random_poly(rng, 2, 4, max_terms=3) for _ in range(2))
            got1 = differential(data, Cochain(1, 2, 2, {(0,): f1, (1,): f2}))
            if got1 != Cochain(2, 2, 2, {(0, 1): d1_ref(f1, f2)}):
                return False
    return True


def _check_three_var_log_formulas(rng):
    P, B = setup_xyz()
    data = log_poisson_complex(P, B)
    x, y, z = (p3(v) for v in "xyz")
    for _ in range(50):
        f = random_poly(rng, 3, 4, max_terms=3)
        got = differential(data, Cochain(0, 3, 3, {(): f}))
        want = Cochain(1, 3, 3, {
            (1,): x * z * f.partial(2),
            (2,): -x * y * f.partial(1),
        })
        if got != want:
            return False

        f1, f2, f3 = (random_poly(rng, 3, 4, max_terms=3) for _ in range(3))
        got1 = differential(data, Cochain(1, 3, 3, {(0,): f1, (1,): f2, (2,): f3}))
        want1 = Cochain(2, 3, 3, _cyclic_to_lex(
            x * z * f3.partial(2) + x * y * f2.partial(1) - x * f1,
            -x * y * f1.partial(1),
            -x * z * f1.partial(2),
        ))
        if got1 != want1:
            return False

        two = Cochain(2, 3, 3, _cyclic_to_lex(f1, f2, f3))
        got2 = differential(data, two)
        # recorded sign normalization (+1, -1) on the printed terms
        top = x * z * f2.partial(2) - x * y * f3.partial(1)
        if got2 != Cochain(3, 3, 3, {(0, 1, 2): top}):
            return False
    return True


def _check_three_var_poisson_formulas(rng):
    P, _ = setup_xyz()
    data = poisson_complex(P)
    x, y, z = (p3(v) for v in "xyz")
    xyz = x * y * z
    for _ in range(50):
        f = random_poly(rng, 3, 4, max_terms=3)
        got = differential(data, Cochain(0, 3, 3, {(): f}))
        want = Cochain(1, 3, 3, {
            (1,): xyz * f.partial(2),
            (2,): -xyz * f.partial(1),
        })
        if got != want:
            return False

        f1, f2, f3 = (random_poly(rng, 3, 4, max_terms=3) for _ in range(3))
        got1 = differential(data, Cochain(1, 3, 3, {(0,): f1, (1,): f2, (2,): f3}))
        want1 = Cochain(2, 3, 3, _cyclic_to_lex(
            xyz * f3.partial(2) + xyz * f2.partial(1)
            - y * z * f1 - x * z * f2 - x * y * f3,
            -xyz * f1.partial(1),
            -xyz * f1.partial(2),
        ))
        if got1 != want1:
            return False

        two = Cochain(2, 3, 3, _cyclic_to_lex(f1, f2, f3))
        got2 = differential(data, two)
        # the published top operator, under every sign normalization
        candidates = [
            Cochain(3, 3, 3, {(0, 1, 2): xyz * (s2 * f2.partial(2)
                                                + s3 * f3.partial(1))})
            for s2 in (1, -1)
            for s3 in (1, -1)
        ]
        if not any(got2 == c for c in candidates):
            return False
    return True


def test_criterion_8_property_suites():
    rng = random.Random(8)
    results = {
        "d-squared": _check_d_squared(rng),
        "jacobi": _check_jacobi(rng),
        "leibniz": _check_leibniz(rng),
        "anchor-homomorphism": _check_anchor_homomorphism(rng),
        "chain-map-square": _check_chain_map(rng),
        "formulas-two-var": _check_two_var_formulas(rng),
        "formulas-three-var-log": _check_three_var_log_formulas(rng),
        "formulas-three-var-poisson": _check_three_var_poisson_formulas(rng),
    }
    ok = all(results.values())
    failed = [name for name, good in results.items() if not good]
    report(8, ok, "property suites" + ("" if ok else f" (failed: {failed})"))
    assert results["d-squared"]
    assert results["jacobi"]
    assert results["leibniz"]
    assert results["anchor-homomorphism"]
    assert results["chain-map-square"]
    assert results["formulas-two-var"]
    assert results["formulas-three-var-log"]
    assert results["formulas-three-var-poisson"], (
        "the published top operator for the three-variable Poisson complex"
        " omits its zeroth-order terms; no sign normalization reconciles it"
        " with a differential that squares to zero (the engine's top"
        " operator carries + xz*g01 + xy*g02, pinned by the Schouten-style"
        " oracle in test_complexes)"
    )


def test_criterion_9_stabilization():
    cases = [
        ("ex1-log", setup_x, log_poisson_complex, [0, 1, 2], 8, True),
        ("ex1-poisson", setup_x, poisson_complex, [0, 1, 2], 8, False),
        ("ex1-derham", setup_x, log_derham_complex, [0, 1, 2], 8, None),
        ("ex2-log", setup_x2, log_poisson_complex, [0, 1, 2], 8, True),
        ("ex2-poisson", setup_x2, poisson_complex, [0, 1, 2], 8, False),
        ("ex3-log", setup_xyz, log_poisson_complex, [3], 6, True),
        ("ex3-poisson", setup_xyz, poisson_complex, [3], 6, False),
    ]
    ok = True
    detail = []
    for name, setup, build, ks, D, with_basis in cases:
        P, B = setup()
        if with_basis is True:
            data = build(P, B)
        elif with_basis is False:
            data = build(P)
        else:
            data = build(B)
        base = SliceWindow(D).resolve_buffer(data)
        shift = max(data.degree_shift(), 0)
        t0 = table(name)
        for k in ks:
            plus1 = cohomology_dims(data, k, SliceWindow(D, base + 1))
            plus2 = cohomology_dims(data, k, SliceWindow(D, base + 2))
            for d in range(D - shift + 1):
                entry = t0.entry(k, d)
                if not entry.stabilized:
                    ok = False
                    detail.append(f"{name} k={k} d={d} not flagged stabilized")
                if entry.dim != plus1[d].dim or entry.dim != plus2[d].dim:
                    ok = False
                    detail.append(f"{name} k={k} d={d} moves under larger buffers")
    report(9, ok, "stabilization flags and buffer invariance" +
           ("" if ok else f" ({detail})"))
    assert ok, detail
