#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncspectra/error.hpp"
#include "ncspectra/fock.hpp"

using namespace ncspectra;
using namespace ncspectra::fock;

namespace {

Eigen::Index idx(int N, int nx, int ny) { return static_cast<Eigen::Index>(nx) * N + ny; }

Vector basis(int N, int nx, int ny) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(N) * N);
    v(idx(N, nx, ny)) = 1.0;
    return v;
}

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

}  // namespace

TEST_CASE("single-mode ladder") {
    const Matrix a3 = ladder(3);
    CHECK(a3(0, 1) == Complex(1.0));
    CHECK(a3(1, 2) == Complex(std::sqrt(2.0)));
    CHECK(a3.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));
    const Matrix a2 = ladder(2);
    CHECK(a2(0, 1) == Complex(1.0));
    CHECK(a2(0, 0) == Complex(0.0));
    CHECK(a2(1, 0) == Complex(0.0));
    CHECK(a2(1, 1) == Complex(0.0));
    const Matrix c = a3 * a3.adjoint() - a3.adjoint() * a3;
    CHECK(c(0, 0) == Complex(1.0));
    CHECK(c(1, 1).real() == doctest::Approx(1.0));
    CHECK(c(2, 2).real() == doctest::Approx(-2.0));
    CHECK(kind_of([] { ladder(1); }) == ErrorKind::CutoffTooSmall);
}

TEST_CASE("two-mode embedding") {
    const int N = 4;
    const auto ax = embed_two_modes(ladder(N), Mode::x, N);
    const auto ay = embed_two_modes(ladder(N), Mode::y, N);
    CHECK((ax.entries * basis(N, 1, 0) - basis(N, 0, 0)).norm() == 0.0);
    CHECK((ay.entries * basis(N, 2, 1) - basis(N, 2, 0)).norm() == 0.0);
    const auto ix = embed_two_modes(Matrix::Identity(N, N), Mode::x, N);
    const auto iy = embed_two_modes(Matrix::Identity(N, N), Mode::y, N);
    CHECK(ix.entries == Matrix::Identity(N * N, N * N));
    CHECK(iy.entries == Matrix::Identity(N * N, N * N));
    CHECK(max_abs(commutator(ax, ay)) == 0.0);
}

TEST_CASE("phase-space operators") {
    const double l = 0.7;
    const auto ps = position_momentum(10, l);
    const Vector vac = basis(10, 0, 0);
    CHECK(vac.dot(ps.x.entries * ps.x.entries * vac).real() == doctest::Approx(l * l / 2));
    CHECK(vac.dot(ps.p_y.entries * ps.p_y.entries * vac).real() ==
          doctest::Approx(1.0 / (2 * l * l)));
    for (const auto* op : {&ps.x, &ps.y, &ps.p_x, &ps.p_y}) CHECK(hermiticity_defect(*op) == 0.0);
    const auto P = interior_projector(10, 2, l);
    CHECK(projected_residual(commutator(ps.x, ps.p_x), Complex(0, 1), P) < 1e-13);
    CHECK(projected_residual(commutator(ps.x, ps.p_y), 0.0, P) == 0.0);
    CHECK(kind_of([] { position_momentum(4, 0.0); }) == ErrorKind::InvalidScale);
}

TEST_CASE("complex coordinates and angular momentum") {
    for (int N : {3, 8, 13}) {
        for (double l : {0.5, 1.0, 1.7}) {
            const auto ps = position_momentum(N, l);
            const auto cc = complex_coords(ps);
            // The two forms of L_z agree entry by entry, bit for bit.
            CHECK(angular_momentum(cc).entries == angular_momentum_cartesian(ps).entries);
            CHECK(adjoint(cc.z).entries == cc.z_bar.entries);
            CHECK(adjoint(cc.p_z).entries == cc.p_z_bar.entries);
        }
    }
    const auto cc = complex_coords(position_momentum(6, 1.0));
    const auto P = interior_projector(6, 2);
    CHECK(projected_residual(commutator(cc.z, cc.p_z), Complex(0, 1), P) < 1e-13);
    CHECK(projected_residual(commutator(cc.z, cc.p_z_bar), 0.0, P) < 1e-13);
    CHECK((angular_momentum(cc).entries * basis(6, 0, 0)).norm() == 0.0);
}

TEST_CASE("Bopp shift") {
    const auto cc = complex_coords(position_momentum(12, 1.0));
    const auto zero = bopp_shift(cc, 0.0);
    CHECK(zero.z_hat.entries == cc.z.entries);
    CHECK(zero.z_hat_bar.entries == cc.z_bar.entries);
    const auto P = interior_projector(12, 3);
    for (double theta : {0.2, -0.05, 1.3}) {
        for (auto order : {ShiftOrder::exact, ShiftOrder::first_order}) {
            const auto s = bopp_shift(cc, theta, order);
            CHECK(projected_residual(commutator(s.z_hat, s.z_hat_bar), 2 * theta, P) < 1e-12);
            CHECK(adjoint(s.z_hat).entries == s.z_hat_bar.entries);
        }
    }
}

TEST_CASE("interior projector") {
    CHECK(interior_projector(10, 2).entries.real().trace() == 64.0);
    CHECK(kind_of([] { interior_projector(10, 10); }) == ErrorKind::InvalidMargin);
    CHECK(kind_of([] { interior_projector(10, 0); }) == ErrorKind::InvalidMargin);
    CHECK(default_margin(24) == 5);
    CHECK(default_margin(10) == 2);
}

TEST_CASE("binary operations reject mismatched operands") {
    const auto a = identity(4, 1.0);
    CHECK(kind_of([&] { (void)(a + identity(5, 1.0)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { (void)(a * identity(4, 2.0)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("Landau ladders") {
    const PhysParams p{1, 1, 1, 0, 0.2, 0.5};
    const double l = 1.0;
    const int N = 16;
    const auto cc = complex_coords(position_momentum(N, l));
    const auto lp = model_ladders(p, LadderModel::landau, cc);
    CHECK(lp.scale == doctest::Approx(0.525));
    const auto P = interior_projector(N, 4);
    CHECK(projected_residual(commutator(lp.a, adjoint(lp.a)), 1.0, P) < 1e-12);
    CHECK(projected_residual(commutator(lp.b, adjoint(lp.b)), 1.0, P) < 1e-12);
    CHECK(projected_residual(commutator(lp.a, lp.b), 0.0, P) < 1e-12);
    CHECK(projected_residual(commutator(lp.a, adjoint(lp.b)), 0.0, P) < 1e-12);

    // The naive b is the adjoint of a, so it is a creation operator.
    const auto naive = naive_b_ladder(p, LadderModel::landau, cc);
    CHECK((naive.entries - adjoint(lp.a).entries).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(projected_residual(commutator(naive, adjoint(naive)), -1.0, P) < 1e-12);
    CHECK(kind_of([&] { model_ladders({1, 1, 0, 0, 0, 0.5}, LadderModel::landau, cc); }) ==
          ErrorKind::IllPosed);
}

TEST_CASE("matched ladders are the circular modes and split L_z") {
    const int N = 14;
    const double s = 2.0;
    const double l = 1.0 / std::sqrt(s);
    const auto cc = complex_coords(position_momentum(N, l));
    const auto lp = ladders_with_scale(s, cc);
    const auto ax = embed_two_modes(ladder(N), Mode::x, N, l);
    const auto ay = embed_two_modes(ladder(N), Mode::y, N, l);
    const Complex r(1.0 / std::sqrt(2.0));
    CHECK((lp.a.entries - (r * ax + Complex(0, -1) * r * ay).entries).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((lp.b.entries - (r * ax + Complex(0, 1) * r * ay).entries).cwiseAbs().maxCoeff() < 1e-14);
    const auto number_difference = adjoint(lp.a) * lp.a - adjoint(lp.b) * lp.b;
    CHECK(projected_residual(number_difference - angular_momentum(cc), 0.0,
                             interior_projector(N, 3, l)) < 1e-13);
}

TEST_CASE("number states") {
    const int N = 20;
    const PhysParams p{1, 1, 1, 0, 0.2, 0.5};
    const double l = 1.0 / std::sqrt(p.e * derive(p).B_tilde);
    const auto cc = complex_coords(position_momentum(N, l));
    const auto lp = model_ladders(p, LadderModel::landau, cc);
    const auto vac = ladder_vacuum(lp);
    CHECK((vac.amplitudes - basis(N, 0, 0)).norm() < 1e-12);
    const auto na = adjoint(lp.a) * lp.a;
    const auto nb = adjoint(lp.b) * lp.b;
    for (int n1 = 0; n1 <= 3; ++n1) {
        for (int n2 = 0; n1 + n2 <= 3; ++n2) {
            const auto st = build_number_state(N, n1, n2, lp, vac);
            CHECK(st.amplitudes.norm() == doctest::Approx(1.0));
            CHECK((na.entries * st.amplitudes - double(n1) * st.amplitudes).norm() < 1e-10);
            CHECK((nb.entries * st.amplitudes - double(n2) * st.amplitudes).norm() < 1e-10);
        }
    }
    CHECK(kind_of([&] { build_number_state(N, 10, 9, lp, vac); }) == ErrorKind::CutoffTooSmall);
    CHECK(kind_of([&] { build_number_state(N, -1, 0, lp, vac); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("algebra suite") {
    const auto pass = algebra_suite({1, 1, 1, 0, 0.2, 0.5}, 24, 5, 1.0);
    REQUIRE(pass.size() == 6);
    for (const auto& c : pass) {
        INFO(c.name);
        CHECK(c.passed);
        CHECK(c.residual < 1e-9);
    }
    CHECK(pass[4].name == "lz_dual_form");
    CHECK(pass[4].residual == 0.0);

    // Without projection the truncation corner -(N - 1) is exposed; relative to the
    // identity target that is a residual of N.
    const auto small = algebra_suite({1, 1, 0, 0, 0, 0.5}, 3, 0, 1.0);
    CHECK(small[0].name == "a_commutator");
    CHECK_FALSE(small[0].passed);
    CHECK(small[0].corner.real() == doctest::Approx(-2.0));
    CHECK(small[0].residual == doctest::Approx(3.0));
    // theta = 0: the deformed check is the plain [z, z_bar] = 0 check.
    CHECK(small[3].name == "deformed_algebra");
    CHECK(small[3].residual == 0.0);
}
