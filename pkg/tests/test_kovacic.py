"""Candidate families: pole data, exponent sets, tables, retention, theta."""

from fractions import Fraction as F

import pytest

from bhkovacic.algebra import Poly
from bhkovacic.kovacic import (
    AffineS,
    NotASolutionError,
    analyze_poles,
    enumerate_families_n1,
    enumerate_families_n2,
    liouvillian_form,
    exponent_sets_n1,
    retain_families,
    theta,
)
from bhkovacic.master import ModeSpec, PerturbationKind, special_frequency

G = PerturbationKind.GRAVITATIONAL
E = PerturbationKind.ELECTROMAGNETIC
S = PerturbationKind.SCALAR


def _mode(kind, l=None, s=1):
    return ModeSpec(kind, l if l is not None else kind.min_l, s)


def test_pole_structure():
    for kind in (G, E, S):
        st = analyze_poles(_mode(kind))
        assert st.order("0") == st.order("2") == 2
        assert st.order("inf") == 4
        assert st.m_plus == 4
        assert st.gamma_count == st.gamma2_count == 2
        assert st.L == {1, 2}


def test_exponent_sets():
    e0, e2, einf, signs = exponent_sets_n1(_mode(G))
    assert [str(e) for e in e0] == ["5/2", "-3/2"]
    e0_em, _, _, _ = exponent_sets_n1(_mode(E))
    assert [str(e) for e in e0_em] == ["3/2", "-1/2"]
    e0_sc, _, _, _ = exponent_sets_n1(_mode(S))
    assert [str(e) for e in e0_sc] == ["1/2"]
    assert [str(e) for e in e2] == ["1/2 + s", "1/2 - s"]
    assert [str(e) for e in einf] == ["1 - s", "1 + s"]
    assert signs[einf[0]] == +1 and signs[einf[1]] == -1


# every row of the three tables: (label, e0, e2, einf, degree)
N1_TABLES = {
    G: [
        ("G1", "5/2", "1/2 + s", "1 - s", "-3"),
        ("G2", "5/2", "1/2 + s", "1 + s", "-3 - 2*s"),
        ("G3", "5/2", "1/2 - s", "1 - s", "-3 + 2*s"),
        ("G4", "5/2", "1/2 - s", "1 + s", "-3"),
        ("G5", "-3/2", "1/2 + s", "1 - s", "1"),
        ("G6", "-3/2", "1/2 + s", "1 + s", "1 - 2*s"),
        ("G7", "-3/2", "1/2 - s", "1 - s", "1 + 2*s"),
        ("G8", "-3/2", "1/2 - s", "1 + s", "1"),
    ],
    S: [
        ("S1", "1/2", "1/2 + s", "1 - s", "-1"),
        ("S2", "1/2", "1/2 + s", "1 + s", "-1 - 2*s"),
        ("S3", "1/2", "1/2 - s", "1 - s", "-1 + 2*s"),
        ("S4", "1/2", "1/2 - s", "1 + s", "-1"),
    ],
    E: [
        ("E1", "3/2", "1/2 + s", "1 - s", "-2"),
        ("E2", "3/2", "1/2 + s", "1 + s", "-2 - 2*s"),
        ("E3", "3/2", "1/2 - s", "1 - s", "-2 + 2*s"),
        ("E4", "3/2", "1/2 - s", "1 + s", "-2"),
        ("E5", "-1/2", "1/2 + s", "1 - s", "0"),
        ("E6", "-1/2", "1/2 + s", "1 + s", "-2*s"),
        ("E7", "-1/2", "1/2 - s", "1 - s", "2*s"),
        ("E8", "-1/2", "1/2 - s", "1 + s", "0"),
    ],
}


@pytest.mark.parametrize("kind", (G, S, E), ids=lambda k: k.name)
def test_family_tables(kind):
    families = enumerate_families_n1(_mode(kind))
    rows = [
        (f.label, str(f.e0), str(f.e2), str(f.einf), str(f.degree)) for f in families
    ]
    assert rows == N1_TABLES[kind]


def test_degree_formula_invariant():
    for kind in (G, E, S):
        for f in enumerate_families_n1(_mode(kind)):
            assert f.degree == AffineS(1) - (f.e0 + f.e2 + f.einf)


def test_retention():
    expected = {G: {"G3", "G7", "G8"}, E: {"E3", "E7"}, S: {"S3"}}
    checked_empty = {G: {"G5", "G6"}, E: {"E5", "E6", "E8"}, S: set()}
    discarded = {G: {"G1", "G2", "G4"}, E: {"E1", "E2", "E4"}, S: {"S1", "S2", "S4"}}
    for kind in (G, E, S):
        result = retain_families(enumerate_families_n1(_mode(kind)), l_max=6)
        assert set(result.retained_labels) == expected[kind]
        assert {f.label for f in result.discarded} == discarded[kind]
        with_solutions = {
            c.family.label for c in result.marginal if c.solutions
        }
        all_checked = {c.family.label for c in result.marginal}
        assert all_checked - with_solutions == checked_empty[kind]


def test_marginal_points_reported():
    result = retain_families(enumerate_families_n1(_mode(G)), l_max=3)
    g6_points = {(c.s, c.d) for c in result.marginal if c.family.label == "G6"}
    assert g6_points == {(F(1, 2), 0), (F(0), 1)}
    e_result = retain_families(enumerate_families_n1(_mode(E)), l_max=3)
    e6_points = {(c.s, c.d) for c in e_result.marginal if c.family.label == "E6"}
    assert e6_points == {(F(0), 0)}


def test_theta_values():
    fams = {f.label: f for f in enumerate_families_n1(_mode(G))}
    t7 = theta(fams["G7"])
    assert (str(t7.c0), str(t7.c2), str(t7.cinf)) == ("-3/2", "1/2 - s", "1/2*s")
    t8 = theta(fams["G8"])
    assert (str(t8.c0), str(t8.c2), str(t8.cinf)) == ("-3/2", "1/2 - s", "-1/2*s")
    sfams = {f.label: f for f in enumerate_families_n1(_mode(S))}
    t3 = theta(sfams["S3"])
    assert (str(t3.c0), str(t3.c2), str(t3.cinf)) == ("1/2", "1/2 - s", "1/2*s")


def test_theta_reconstruction_invariant():
    for kind in (G, E, S):
        result = retain_families(enumerate_families_n1(_mode(kind)), l_max=4)
        for fam in result.retained:
            spec = theta(fam)
            assert spec.c0 == fam.e0
            assert spec.c2 == fam.e2
            assert spec.cinf.at(2) == fam.sign_inf * 1  # s/2 at s = 2


def test_n2_enumeration():
    expected_e0 = {G: ["-6", "2", "10"], E: ["-2", "2", "6"], S: ["2"]}
    counts = {G: 9, E: 9, S: 3}
    for kind in (G, E, S):
        candidates, retained = enumerate_families_n2(_mode(kind))
        assert len(candidates) == counts[kind]
        assert retained == []
        seen_e0 = sorted({str(f.e0) for f in candidates}, key=lambda t: int(t))
        assert seen_e0 == sorted(expected_e0[kind], key=lambda t: int(t))
        for f in candidates:
            assert str(f.einf) == "4"
            assert f.n == 2
            # degree formula for n = 2: d = 2 - sum(e)/2
            assert f.degree == AffineS(2) - (f.e0 + f.e2 + f.einf) * F(1, 2)


def test_liouvillian_form_g8():
    from bhkovacic.auxode import solve_low_degree
    from bhkovacic.evidence import family_by_label

    g8 = family_by_label("G8")
    ((s, P),) = solve_low_degree(g8, 1, l=2)
    mode = ModeSpec(G, 2, s)
    desc = liouvillian_form(g8, P, mode)
    # the master-equation form P(r) exp(-2r) / (r (r-2)^4)
    assert desc.r_power_master == -1
    assert desc.rm2_power_master == -4
    assert desc.exp_rate == -2
    assert desc.P == Poly([F(3, 2), 1])
    # and the Schrodinger-form powers carry the half shifts
    assert desc.r_power == F(-3, 2)
    assert desc.rm2_power == F(-7, 2)


def test_liouvillian_form_g7():
    from bhkovacic.auxode import chandrasekhar_r_frame
    from bhkovacic.evidence import family_by_label

    g7 = family_by_label("G7")
    mode = ModeSpec(G, 2, special_frequency(2))
    desc = liouvillian_form(g7, chandrasekhar_r_frame(2), mode)
    assert desc.r_power_master == -1
    assert desc.rm2_power_master == -4
    assert desc.exp_rate == 2


def test_liouvillian_form_rejects_non_solutions():
    from bhkovacic.evidence import family_by_label

    g8 = family_by_label("G8")
    mode = ModeSpec(G, 2, 4)
    with pytest.raises(NotASolutionError):
        liouvillian_form(g8, Poly([1, 1]), mode)
    with pytest.raises(NotASolutionError):
        liouvillian_form(g8, Poly.zero(), mode)
