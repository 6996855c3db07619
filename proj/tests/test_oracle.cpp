#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <tuple>

#include "ncspectra/error.hpp"
#include "ncspectra/oracle.hpp"

using namespace ncspectra;
using namespace ncspectra::oracle;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no ncspectra::Error thrown");
    return ErrorKind::InvalidArgument;
}

const PhysParams kLandau{1, 1, 1, 0, 0.2, 0.5};
const PhysParams kOscillator{1, 1, 0.5, 0.3, 0.1, 0.5};

}  // namespace

TEST_CASE("eigen_hermitian on small inputs") {
    fock::Matrix d = fock::Matrix::Zero(3, 3);
    d.diagonal() << 3, 1, 2;
    const auto e = eigen_hermitian(d, 3);
    CHECK(e == std::vector<double>{1, 2, 3});

    const fock::Matrix a = fock::ladder(5);
    const auto n = eigen_hermitian(fock::Matrix(a.adjoint() * a), 5);
    for (int i = 0; i < 5; ++i) CHECK(n[i] == doctest::Approx(i));

    fock::Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const auto px = eigen_hermitian(x, 2);
    CHECK(px[0] == doctest::Approx(-1));
    CHECK(px[1] == doctest::Approx(1));

    fock::Matrix skew(2, 2);
    skew << 0, 1, -1, 0;
    CHECK(kind_of([&] { eigen_hermitian(skew, 1); }) == ErrorKind::NotHermitian);
    CHECK(kind_of([&] { eigen_hermitian(x, 3); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { eigen_hermitian(x, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("every assembly is Hermitian and on the E_bar scale") {
    const PhysParams critical{1, 1, 0.1, 1, -0.2, 0.5};
    const std::pair<ModelId, PhysParams> cases[] = {
        {ModelId::landau_commutative, kLandau},      {ModelId::landau_nc_expanded, kLandau},
        {ModelId::landau_nc_shifted, kLandau},       {ModelId::oscillator_commutative, kOscillator},
        {ModelId::oscillator_nc_expanded, kOscillator}, {ModelId::oscillator_nc_shifted, kOscillator},
        {ModelId::oscillator_critical, critical},
    };
    for (const auto& [id, p] : cases) {
        for (auto order : {fock::ShiftOrder::first_order, fock::ShiftOrder::exact}) {
            const auto h = assemble({id, order}, p, 10, 1.0);
            INFO(to_string(id));
            CHECK(h.dim() == 100);
            CHECK(fock::hermiticity_defect(h) <= 1e-12 * fock::max_abs(h));
        }
    }
}

TEST_CASE("assembly preconditions") {
    CHECK(kind_of([] { assemble({ModelId::landau_nc_expanded}, kLandau, 7, 1.0); }) ==
          ErrorKind::CutoffTooSmall);
    CHECK(kind_of([] { assemble({ModelId::landau_nc_expanded}, {1, 1, 2, 0, -2, 0.5}, 8, 1.0); }) ==
          ErrorKind::IllPosed);
    CHECK(kind_of([] { assemble({ModelId::landau_critical}, {1, 1, 1, 0, 0, 0.5}, 8, 1.0); }) ==
          ErrorKind::IllPosed);
    CHECK(kind_of([] { assemble({ModelId::landau_critical}, {1, 1, 0, 0, 0, 0.5}, 8, 1.0); }) ==
          ErrorKind::InvalidField);
    CHECK(kind_of([] {
              assemble({ModelId::oscillator_critical}, {1, 1, 0.3, 1, -0.2, 0.5}, 8, 1.0);
          }) == ErrorKind::NotAtCriticalPoint);
    CHECK(parse_model_id("landau-nc") == ModelId::landau_nc_expanded);
    CHECK(parse_model_id("oscillator_nc_shifted") == ModelId::oscillator_nc_shifted);
    CHECK(kind_of([] { parse_model_id("dirac"); }) == ErrorKind::UnknownModel);
}

TEST_CASE("zero shift reproduces the commutative Landau assembly entry for entry") {
    PhysParams p = kLandau;
    p.theta = 0.0;
    const auto comm = assemble({ModelId::landau_commutative}, p, 12, 1.0);
    for (auto order : {fock::ShiftOrder::first_order, fock::ShiftOrder::exact}) {
        CHECK(assemble({ModelId::landau_nc_shifted, order}, p, 12, 1.0).entries == comm.entries);
    }
}

TEST_CASE("shifted Landau lower block is bounded below by its offset") {
    PhysParams p = kLandau;
    p.s_z = -0.5;
    // Only the exact product is literally D^dagger D; first_order drops a theta^2 square.
    const auto e = eigen_hermitian(
        assemble({ModelId::landau_nc_shifted, fock::ShiftOrder::exact}, p, 16, 1.0), 1);
    CHECK(e[0] >= p.e * p.B / (2 * p.m) - 1e-8);
}

TEST_CASE("convergence") {
    const auto r = converge({ModelId::landau_commutative}, {1, 1, 1, 0, 0, 0.5}, 4, 1e-6,
                            {16, 24, 32});
    CHECK(r.converged);
    CHECK(r.delta < 1e-8);
    for (double v : r.eigenvalues) CHECK(v == doctest::Approx(0.5).epsilon(1e-8));

    const auto fast = converge({ModelId::landau_commutative}, {1, 1, 1, 0, 0, 0.5}, 2,
                               std::numeric_limits<double>::infinity(), {8, 10, 12});
    CHECK(fast.converged);
    CHECK(fast.cutoff_used == 10);

    CHECK(kind_of([] {
              converge({ModelId::landau_commutative}, {1, 1, 1, 0, 0, 0.5}, 65, 1e-6, {8, 10});
          }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] {
              converge({ModelId::landau_commutative}, {1, 1, 1, 0, 0, 0.5}, 2, 1e-6, {10});
          }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] {
              converge({ModelId::landau_commutative}, {1, 1, 1, 0, 0, 0.5}, 2, 1e-6, {12, 10});
          }) == ErrorKind::InvalidArgument);
}

TEST_CASE("commutative Landau verification") {
    const auto r = verify({ModelId::landau_nc_expanded}, {1, 1, 1, 0, 0, 0.5}, 6, 1e-6,
                          {16, 24, 32});
    CHECK(r.converged);
    CHECK(r.matched_variant != "none");
    for (const auto& v : r.variants) {
        if (v.name.rfind("closed_form", 0) == 0) CHECK(v.max_residual < 1e-8);
    }
    // Landau levels are infinitely degenerate: every assignment is a tie.
    for (const auto& a : r.assignment) CHECK(a.tie);
}

TEST_CASE("bounded deformed Landau problem matches the spin-reversed binding") {
    // theta < 0 keeps the rotation frequency below the oscillator frequency.
    PhysParams p = kLandau;
    p.theta = -0.2;
    for (double s : {0.5, -0.5}) {
        p.s_z = s;
        const auto r = verify({ModelId::landau_nc_expanded}, p, 6);
        CHECK(r.converged);
        CHECK(r.matched_variant == "closed_form_spin_reversed");
        CHECK(r.notes.empty());
    }
}

TEST_CASE("deformed Landau problem at positive theta is unbounded below") {
    const auto r = verify({ModelId::landau_nc_expanded}, kLandau, 6, 1e-6, {16, 24});
    CHECK_FALSE(r.converged);
    CHECK(r.matched_variant == "none");
    REQUIRE(r.notes.size() == 2);
}

TEST_CASE("deformed oscillator adjudication") {
    const double l_matched = 1.0 / std::sqrt(derive(kOscillator).m_tilde *
                                             std::sqrt(derive(kOscillator).varpi_sq));
    const auto r = verify({ModelId::oscillator_nc_expanded}, kOscillator, 6, 1e-6,
                          kDefaultSchedule, l_matched);
    CHECK(r.converged);
    CHECK(r.matched_variant == "closed_form_tilde_mass_lz");
    PhysParams heavy = kOscillator;
    heavy.m = 2.0;
    const auto h = verify({ModelId::oscillator_nc_expanded}, heavy, 6);
    for (const auto& v : h.variants) {
        if (v.name == "varpi_over_m_nonrel") CHECK(v.max_residual > 1e-5);
    }
    CHECK(h.matched_variant == "closed_form_tilde_mass_lz");
}

TEST_CASE("verification refusals") {
    CHECK(kind_of([] {
              verify({ModelId::landau_nc_shifted, fock::ShiftOrder::exact}, kLandau, 2);
          }) == ErrorKind::AnalyticUnavailable);
    CHECK(kind_of([] {
              verify({ModelId::landau_nc_expanded}, {1, 1, 4, 0, -1, 0.5}, 2);
          }) == ErrorKind::IllPosed);
    CHECK(kind_of([] {
              verify({ModelId::oscillator_nc_expanded}, {1, 1, 0.1, 1, -0.2, 0.5}, 2);
          }) == ErrorKind::IllPosed);
}

TEST_CASE("determinism") {
    const auto a = verify({ModelId::oscillator_nc_expanded}, kOscillator, 4, 1e-6, {16, 24});
    const auto b = verify({ModelId::oscillator_nc_expanded}, kOscillator, 4, 1e-6, {16, 24});
    CHECK(a.numeric == b.numeric);
    CHECK(a.matched_variant == b.matched_variant);
}

TEST_CASE("property: l_ref independence on a well-confined problem") {
    const PhysParams p{1, 1, 1, 1, 0.1, 0.5};
    const double l0 = default_l_ref(p);
    const auto base = converge({ModelId::oscillator_nc_expanded}, p, 6, 1e-6, kDefaultSchedule, l0);
    CHECK(base.converged);
    // Mild mismatches only: a 2x length mismatch needs cutoffs beyond the default schedule.
    for (double f : {0.75, 1.5}) {
        const auto other =
            converge({ModelId::oscillator_nc_expanded}, p, 6, 1e-6, kDefaultSchedule, f * l0);
        REQUIRE(other.converged);
        for (int i = 0; i < 6; ++i) CHECK(std::abs(other.eigenvalues[i] - base.eigenvalues[i]) < 1e-5);
    }
}

TEST_CASE("quadratic decomposition recovers the expanded coefficients") {
    const auto d = derive(kLandau);
    const auto h = assemble({ModelId::landau_nc_expanded}, kLandau, 16, 1.0);
    const auto q = decompose_quadratic(h, kLandau, 4);
    CHECK(q.kinetic == doctest::Approx(2 / d.m_tilde));
    CHECK(q.confinement == doctest::Approx(d.m_tilde * d.omega_tilde * d.omega_tilde / 2));
    CHECK(q.angular == doctest::Approx(d.omega_c * 1.05));
    CHECK(q.constant == doctest::Approx(-0.5 * 0.2 / 4));
    CHECK(q.fit_residual < 1e-10);
}

TEST_CASE("gauge comparison") {
    PhysParams flat = kLandau;
    flat.theta = 0.0;
    const auto zero = gauge_compare(GaugePair::landau, flat, 16, 1.0);
    CHECK(zero.residual < 1e-12);
    CHECK(zero.exact_vs_first_order == 0.0);

    PhysParams p = kLandau;
    p.theta = 0.1;
    const auto g = gauge_compare(GaugePair::landau, p, 16, 1.0);
    // The shifted product form and the expanded form agree on the L_z coefficient and the
    // constant, but their kinetic terms differ already at first order in theta.
    CHECK(g.shifted_first_order.angular == doctest::Approx(g.expanded.angular));
    CHECK(g.shifted_first_order.constant == doctest::Approx(g.expanded.constant));
    CHECK(g.shifted_first_order.kinetic == doctest::Approx(2 * (1 + p.theta / 2)));
    CHECK(g.expanded.kinetic == doctest::Approx(2 / (1 + p.theta / 2)));
    CHECK(g.ratio == doctest::Approx(2.0).epsilon(0.05));
    CHECK_FALSE(g.first_order_agreement);
    // exact - first_order is the theta^2 kinetic monomial (eB theta)^2 / 8m p_z p_z_bar.
    CHECK(g.shifted_exact.kinetic - g.shifted_first_order.kinetic ==
          doctest::Approx(std::pow(p.e * p.B * p.theta, 2) / (8 * p.m)));
    CHECK(g.shifted_exact.confinement == doctest::Approx(g.shifted_first_order.confinement));
}

TEST_CASE("spin gap is a rigid shift") {
    const auto gaps = spin_gap({ModelId::landau_nc_expanded}, kLandau, 6, 16, 1.0);
    for (double g : gaps) CHECK(std::abs(g + 0.1) < 1e-12);
}

TEST_CASE("number states are eigenvectors of the expanded Hamiltonian") {
    for (const auto& [id, p, model] :
         {std::tuple{ModelId::landau_nc_expanded, kLandau, fock::LadderModel::landau},
          std::tuple{ModelId::oscillator_nc_expanded, kOscillator, fock::LadderModel::oscillator}}) {
        const auto d = derive(p);
        const double s = model == fock::LadderModel::landau ? p.e * d.B_tilde
                                                            : d.m_tilde * std::sqrt(d.varpi_sq);
        const double l = 1.0 / std::sqrt(s);
        const int N = 32;
        const auto cc = fock::complex_coords(fock::position_momentum(N, l));
        const auto lp = fock::model_ladders(p, model, cc);
        const auto vac = fock::ladder_vacuum(lp);
        const auto h = assemble({id}, p, N, l);
        for (int n1 = 0; n1 <= 4; ++n1) {
            for (int n2 = 0; n1 + n2 <= 4; ++n2) {
                const auto st = fock::build_number_state(N, n1, n2, lp, vac);
                CHECK(rayleigh(h, st.amplitudes).residual < 1e-7);
            }
        }
    }
}
