"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

All comparisons are exact integer equalities.
"""

import itertools

from framing_census import golden
from framing_census.classifier import (
    ThetaInput,
    classify_framings,
    classify_theta,
    stable_framing_preset,
    table_pi_2n_SO_2n,
)
from framing_census.exactlin import (
    AbGroupPresentation,
    AbHom,
    FinAbGroup,
    IntMatrix,
    coinvariants,
    presentation_abelianization,
)
from framing_census.forms import Isometry, det_spin_class, hyperbolic_form, is_isometry, to_canonical
from framing_census.orbit_engine import orbit_arf_values, quad_orbit_census
from framing_census.quad import QuadraticRefinement, act, census, evaluate, standard_refinement
from framing_census.verify import (
    check_arf_invariance,
    check_difference_linearity,
    check_snf_properties,
    check_spinor_multiplicativity,
)
from framing_census.witnesses import (
    conjugation_identities_check,
    m22_action_matrix,
    m22_model_check,
    o11_classification,
    o11_solutions,
    s_tilde_from_base_change,
)


def closed_form(g):
    return (2 ** (2 * g - 1) + 2 ** (g - 1), 2 ** (2 * g - 1) - 2 ** (g - 1))


def test_quadratic_census(acceptance):
    got = {g: census(g) for g in range(1, 7)}
    ok = all(got[g] == closed_form(g) for g in got) and got[1] == (3, 1) and got[2] == (10, 6)
    assert acceptance(1, "quadratic census g = 1..6", ok, f"g=1 {got[1]}, g=2 {got[2]}")


def test_orbit_theorem(acceptance):
    ok = True
    for g in range(1, 6):
        dec = quad_orbit_census(g)
        arfs = orbit_arf_values(dec, g)
        ok &= dec.orbit_count == 2
        ok &= sorted(dec.sizes, reverse=True) == list(closed_form(g))
        ok &= all(len(a) == 1 for a in arfs)
    assert acceptance(2, "two Sp(F2) orbits on refinements, Arf constant, g = 1..5", ok)


def test_snf_pipeline(acceptance):
    pres = AbGroupPresentation.from_rows(2, [[12, 0], [0, 12], [6, 6]])
    ab = presentation_abelianization(pres)
    coinv = presentation_abelianization(pres.with_relations([[2, 0], [0, 2], [1, 1]]))
    via_action = coinvariants(pres, [IntMatrix.from_rows([[-1, 0], [0, -1]]),
                                     IntMatrix.from_rows([[0, -1], [-1, 0]])])
    sl2 = presentation_abelianization(AbGroupPresentation.from_rows(2, [[4, 0], [1, 3]]))
    ok = (ab.invariant_factors == (6, 12) and coinv == via_action == FinAbGroup((2,))
          and sl2 == FinAbGroup((12,)))
    assert acceptance(3, "SNF pipeline (6,12) -> Z/2, SL2 -> Z/12", ok, f"{ab}; {coinv}; {sl2}")


def test_witness_matrices(acceptance):
    lam = hyperbolic_form(2, -1)
    mu = QuadraticRefinement(2, (1, 1, 1, 1))
    tb = golden.TILDE_BASIS
    es, fs = ("e~1", "e~2"), ("f~1", "f~2")
    ok = all(lam.pair(tb[a], tb[b]) == 0 for grp in (es, fs) for a, b in itertools.product(grp, repeat=2))
    ok &= all(lam.pair(tb[es[i]], tb[fs[j]]) == int(i == j) for i in range(2) for j in range(2))
    ok &= all(evaluate(mu, v) == 0 for v in tb.values())
    S = s_tilde_from_base_change()
    canon = to_canonical(golden.S_TILDE, golden.S_TILDE_BASIS_ORDER)
    mu0 = standard_refinement(0, 2)
    ok &= S == golden.S_TILDE and is_isometry(canon, lam) and act(mu0, canon) == mu0
    F = hyperbolic_form(2, 1)
    T = IntMatrix.from_rows([[1, 1], [0, 1]])
    I2 = IntMatrix.identity(2)
    ok &= m22_action_matrix(T, I2) == golden.T1 and m22_action_matrix(I2, T) == golden.T2
    ok &= all(is_isometry(M, F) and det_spin_class(Isometry(M, F)) == (0, 0) for M in (golden.T1, golden.T2))
    assert acceptance(4, "hyperbolic basis, S~ in Sp^q_4(Z), T1/T2 printed, isometric, trivial det+spin", ok)


def test_conjugation_identities(acceptance):
    I2 = IntMatrix.identity(2)
    s1 = IntMatrix.block_diagonal(-I2, I2)
    s2 = IntMatrix.block_diagonal(IntMatrix.from_rows([[0, 1], [1, 0]]), I2)
    T1, T2 = golden.T1, golden.T2
    ok = (s1 @ T1 @ s1.inverse() == T1.inverse() and s1 @ T2 @ s1.inverse() == T2.inverse()
          and s2 @ T1 @ s2.inverse() == T2.inverse() and s2 @ T2 @ s2.inverse() == T1.inverse())
    ok &= conjugation_identities_check().passed
    assert acceptance(5, "conjugation identities as exact 4x4 equations", ok)


def test_o11(acceptance):
    F = hyperbolic_form(1, 1)
    sols = o11_solutions()
    box = [IntMatrix(2, 2, t) for t in itertools.product(range(-4, 5), repeat=4)]
    found = {M for M in box if is_isometry(M, F)}
    classes = sorted(det_spin_class(Isometry(M, F)) for M in sols)
    not_z4 = all(M @ M == IntMatrix.identity(2) for M in sols)
    ok = (len(sols) == 4 and found == set(sols) and classes == [(0, 0), (0, 1), (1, 0), (1, 1)] and not_z4
          and o11_classification().passed)
    assert acceptance(6, "O_{1,1}(Z) has 4 elements, det+spin bijective, not Z/4", ok)


def test_m22_model(acceptance):
    rep = m22_model_check(samples=1000, action_samples=500, seed=0)
    ok = rep.passed and rep.computed["trace_form_samples"] == 1000 and rep.computed["action_samples"] == 500
    assert acceptance(7, "M_{2,2} trace form, hyperbolic basis, SL2xSL2 action, (-I,-I) trivial", ok)


def test_theorem_a_table(acceptance):
    ok = True
    for n in range(2, 25):
        for g in range(1, 11):
            ok &= classify_framings(n, g).rel_boundary_orbits == (2 if n in (3, 7) or n % 4 == 0 else 1)
    for g in range(2, 11):
        ok &= classify_framings(1, g).rel_boundary_orbits == 2
    sizes = {0: 8, 1: 4, 2: 4, 3: 4}
    for n in range(1, 25):
        want = 1 if n in (1, 3) else sizes[n % 4]
        ok &= classify_framings(n, 0).rel_boundary_orbits == want == table_pi_2n_SO_2n(n).group.order()
    assert acceptance(8, "orbit counts n <= 24, g <= 10, n = 1, and g = 0", ok)


def test_theta_calculator(acceptance):
    ok = all(
        classify_theta(stable_framing_preset(n, g)).orbit_count == classify_framings(n, g).rel_boundary_orbits
        for n in range(2, 13) for g in range(1, 5)
    )
    Z4 = FinAbGroup((4,))
    case_b = classify_theta(ThetaInput(3, 1, Z4, AbHom.zero(FinAbGroup.trivial(), Z4), "B"))
    ok &= case_b.orbit_count == 4
    assert acceptance(9, "stable framings match framings; case B at n = 3 gives 4", ok)


def test_property_suites(acceptance):
    results = {
        "spinor": check_spinor_multiplicativity(0, samples=500)[0],
        "arf": check_arf_invariance(0, samples=1000)[0],
        "linearity": check_difference_linearity(0, max_g=3)[0],
        "snf": check_snf_properties(0, samples=500)[0],
    }
    ok = all(results.values())
    failed = [k for k, v in results.items() if not v]
    assert acceptance(10, "property suites", ok, "failed: " + ", ".join(failed) if failed else "")
