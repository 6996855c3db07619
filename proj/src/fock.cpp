#include "ncspectra/fock.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ncspectra/error.hpp"

namespace ncspectra::fock {

namespace {

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
    if (a.cutoff != b.cutoff || a.l_ref != b.l_ref || a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": operands differ in cutoff or reference scale");
    }
}

OperatorMatrix like(const OperatorMatrix& proto, Matrix entries, std::string label,
                    bool hermitian = false) {
    return OperatorMatrix{proto.cutoff, proto.l_ref, std::move(entries), std::move(label),
                          hermitian};
}

Matrix ordered_product(const Matrix& a, const Matrix& b) {
    const Eigen::Index n = a.rows();
    Matrix c = Matrix::Zero(n, b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            const Complex bkj = b(k, j);
            if (bkj == Complex{}) continue;
            for (Eigen::Index i = 0; i < n; ++i) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) continue;
                c(i, j) += aik * bkj;
            }
        }
    }
    return c;
}

void require_cutoff(int N, int minimum) {
    if (N < minimum) {
        throw Error(ErrorKind::CutoffTooSmall,
                    "cutoff " + std::to_string(N) + " below minimum " + std::to_string(minimum));
    }
}

}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_compatible(a, b, "sum");
    return like(a, a.entries + b.entries, a.label + "+" + b.label, a.hermitian && b.hermitian);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_compatible(a, b, "difference");
    return like(a, a.entries - b.entries, a.label + "-" + b.label, a.hermitian && b.hermitian);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_compatible(a, b, "product");
    return like(a, ordered_product(a.entries, b.entries), a.label + "*" + b.label);
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) {
    return like(a, s * a.entries, a.label, a.hermitian && s.imag() == 0.0);
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
    return like(a, a.entries.adjoint(), a.label + "^dag", a.hermitian);
}

OperatorMatrix identity(int N, double l_ref) {
    const Eigen::Index d = static_cast<Eigen::Index>(N) * N;
    return OperatorMatrix{N, l_ref, Matrix::Identity(d, d), "I", true};
}

double max_abs(const OperatorMatrix& a) {
    return a.entries.size() == 0 ? 0.0 : a.entries.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const OperatorMatrix& a) {
    return (a.entries - a.entries.adjoint()).cwiseAbs().maxCoeff();
}

Matrix ladder(int N) {
    require_cutoff(N, 2);
    Matrix a = Matrix::Zero(N, N);
    for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

OperatorMatrix embed_two_modes(const Matrix& op, Mode mode, int N, double l_ref,
                               std::string label) {
    if (op.rows() != N || op.cols() != N) {
        throw Error(ErrorKind::DimensionMismatch, "single-mode operator is not N x N");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(N) * N;
    Matrix out = Matrix::Zero(d, d);
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            const Complex v = op(r, c);
            if (v == Complex{}) continue;
            for (int s = 0; s < N; ++s) {
                if (mode == Mode::x) {
                    out(r * N + s, c * N + s) = v;
                } else {
                    out(s * N + r, s * N + c) = v;
                }
            }
        }
    }
    return OperatorMatrix{N, l_ref, std::move(out), std::move(label), false};
}

PhaseSpace position_momentum(int N, double l_ref) {
    if (!(l_ref > 0.0) || !std::isfinite(l_ref)) {
        throw Error(ErrorKind::InvalidScale, "reference length must be > 0");
    }
    const Matrix a = ladder(N);
    const Matrix a_dag = a.adjoint();
    const double root2 = std::sqrt(2.0);
    const Matrix x1 = Complex(l_ref / root2) * (a + a_dag);
    const Matrix p1 = kI * Complex(1.0 / (l_ref * root2)) * (a_dag - a);

    PhaseSpace ops{embed_two_modes(x1, Mode::x, N, l_ref, "x"),
                   embed_two_modes(x1, Mode::y, N, l_ref, "y"),
                   embed_two_modes(p1, Mode::x, N, l_ref, "p_x"),
                   embed_two_modes(p1, Mode::y, N, l_ref, "p_y")};
    ops.x.hermitian = ops.y.hermitian = ops.p_x.hermitian = ops.p_y.hermitian = true;
    return ops;
}

ComplexCoords complex_coords(const PhaseSpace& ops) {
    require_compatible(ops.x, ops.y, "complex_coords");
    require_compatible(ops.p_x, ops.p_y, "complex_coords");
    require_compatible(ops.x, ops.p_x, "complex_coords");
    ComplexCoords c{ops.x + kI * ops.y, ops.x - kI * ops.y,
                    Complex(0.5) * (ops.p_x - kI * ops.p_y),
                    Complex(0.5) * (ops.p_x + kI * ops.p_y)};
    c.z.label = "z";
    c.z_bar.label = "z_bar";
    c.p_z.label = "p_z";
    c.p_z_bar.label = "p_z_bar";
    c.z.hermitian = c.z_bar.hermitian = c.p_z.hermitian = c.p_z_bar.hermitian = false;
    return c;
}

OperatorMatrix angular_momentum(const ComplexCoords& ops) {
    OperatorMatrix lz = kI * (ops.z * ops.p_z - ops.z_bar * ops.p_z_bar);
    lz.label = "L_z";
    lz.hermitian = true;
    return lz;
}

OperatorMatrix angular_momentum_cartesian(const PhaseSpace& ops) {
    OperatorMatrix lz = ops.x * ops.p_y - ops.y * ops.p_x;
    lz.label = "L_z";
    lz.hermitian = true;
    return lz;
}

BoppShift bopp_shift(const ComplexCoords& ops, double theta, ShiftOrder order) {
    require_compatible(ops.z, ops.p_z_bar, "bopp_shift");
    BoppShift s;
    s.theta = theta;
    s.order = order;
    s.z = ops.z;
    s.z_bar = ops.z_bar;
    s.z_shift = Complex(0.0, theta) * ops.p_z_bar;
    s.z_bar_shift = Complex(0.0, -theta) * ops.p_z;
    s.z_hat = ops.z + s.z_shift;
    s.z_hat_bar = ops.z_bar + s.z_bar_shift;
    s.z_hat.label = "z_hat";
    s.z_hat_bar.label = "z_hat_bar";
    return s;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_compatible(a, b, "commutator");
    OperatorMatrix c = a * b - b * a;
    c.label = "[" + a.label + "," + b.label + "]";
    return c;
}

OperatorMatrix interior_projector(int N, int margin, double l_ref) {
    if (margin <= 0 || margin >= N) {
        throw Error(ErrorKind::InvalidMargin, "margin must satisfy 0 < margin < N");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(N) * N;
    Matrix p = Matrix::Zero(d, d);
    for (int nx = 0; nx < N - margin; ++nx) {
        for (int ny = 0; ny < N - margin; ++ny) p(nx * N + ny, nx * N + ny) = 1.0;
    }
    return OperatorMatrix{N, l_ref, std::move(p), "P_interior", true};
}

int default_margin(int N) { return (N + 4) / 5; }

double projected_residual(const OperatorMatrix& c, Complex target,
                          const OperatorMatrix& projector) {
    require_compatible(c, projector, "projected_residual");
    const Matrix& p = projector.entries;
    const Matrix diff = c.entries - target * Matrix::Identity(c.dim(), c.dim());
    // The projector is diagonal 0/1, so P D P just masks rows and columns.
    double worst = 0.0;
    for (Eigen::Index j = 0; j < diff.cols(); ++j) {
        if (p(j, j) == Complex{}) continue;
        for (Eigen::Index i = 0; i < diff.rows(); ++i) {
            if (p(i, i) == Complex{}) continue;
            worst = std::max(worst, std::abs(p(i, i) * diff(i, j) * p(j, j)));
        }
    }
    return worst;
}

namespace {

double ladder_scale(const PhysParams& phys, LadderModel model) {
    const DerivedParams d = derive(phys);
    double s = 0.0;
    if (model == LadderModel::landau) {
        s = phys.e * d.B_tilde;
    } else {
        s = d.m_tilde * std::sqrt(d.varpi_sq);
    }
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw Error(ErrorKind::IllPosed, model == LadderModel::landau
                                             ? "ladder operators need e B_tilde > 0"
                                             : "ladder operators need m_tilde varpi > 0");
    }
    return s;
}

}  // namespace

LadderPair model_ladders(const PhysParams& phys, LadderModel model, const ComplexCoords& ops) {
    return ladders_with_scale(ladder_scale(phys, model), ops);
}

LadderPair ladders_with_scale(double s, const ComplexCoords& ops) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw Error(ErrorKind::InvalidScale, "ladder scale must be finite and > 0");
    }
    const Complex norm = 1.0 / (2.0 * std::sqrt(s));
    LadderPair out;
    out.scale = s;
    out.a = (norm * Complex(0.0, 2.0)) * ops.p_z + (norm * s) * ops.z_bar;
    out.b = (norm * Complex(0.0, 2.0)) * ops.p_z_bar + (norm * s) * ops.z;
    out.a.label = "a";
    out.b.label = "b";
    return out;
}

OperatorMatrix naive_b_ladder(const PhysParams& phys, LadderModel model,
                              const ComplexCoords& ops) {
    const double s = ladder_scale(phys, model);
    const Complex norm = 1.0 / (2.0 * std::sqrt(s));
    OperatorMatrix b = (norm * Complex(0.0, -2.0)) * ops.p_z_bar + (norm * s) * ops.z;
    b.label = "b_naive";
    return b;
}

StateVector ladder_vacuum(const LadderPair& ladders) {
    const OperatorMatrix& a = ladders.a;
    const Matrix k = a.entries.adjoint() * a.entries +
                     ladders.b.entries.adjoint() * ladders.b.entries;
    const Eigen::Index d = k.rows();
    const Matrix shifted = 0.5 * (k + k.adjoint()) + 0.5 * Matrix::Identity(d, d);
    Eigen::LLT<Matrix> llt(shifted);

    Vector v = Vector::Zero(d);
    v(0) = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        Vector next = llt.solve(v);
        next.normalize();
        if (std::abs(next(0)) > 0.0) next *= std::conj(next(0)) / std::abs(next(0));
        const double change = (next - v).norm();
        v = std::move(next);
        if (change < 1e-15) break;
    }
    return StateVector{a.cutoff, std::move(v), 0, 0};
}

StateVector build_number_state(int N, int n1, int n2, const LadderPair& ladders) {
    return build_number_state(N, n1, n2, ladders, ladder_vacuum(ladders));
}

StateVector build_number_state(int N, int n1, int n2, const LadderPair& ladders,
                               const StateVector& vacuum) {
    if (n1 < 0 || n2 < 0) throw Error(ErrorKind::InvalidArgument, "quantum numbers must be >= 0");
    if (n1 + n2 >= N - 1 || n1 + n2 > 40) {
        throw Error(ErrorKind::CutoffTooSmall, "state not representable inside the cutoff");
    }
    if (ladders.a.cutoff != N || vacuum.cutoff != N) {
        throw Error(ErrorKind::DimensionMismatch, "ladder operators built for another cutoff");
    }
    const Matrix a_dag = ladders.a.entries.adjoint();
    const Matrix b_dag = ladders.b.entries.adjoint();
    Vector v = vacuum.amplitudes;
    double factorial = 1.0;
    for (int k = 1; k <= n2; ++k) {
        v = b_dag * v;
        factorial *= k;
    }
    for (int k = 1; k <= n1; ++k) {
        v = a_dag * v;
        factorial *= k;
    }
    v /= std::sqrt(factorial);
    v.normalize();
    return StateVector{N, std::move(v), n1, n2};
}

namespace {

double max_deviation(const OperatorMatrix& a, const OperatorMatrix& b) {
    return (a.entries - b.entries).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<AlgebraCheck> algebra_suite(const PhysParams& phys, int N, int margin, double l_ref,
                                        double threshold) {
    require_cutoff(N, 2);
    if (margin < 0 || margin >= N) {
        throw Error(ErrorKind::InvalidMargin, "margin must satisfy 0 <= margin < N");
    }
    const PhaseSpace ps = position_momentum(N, l_ref);
    const ComplexCoords cc = complex_coords(ps);
    const OperatorMatrix projector =
        margin == 0 ? identity(N, l_ref) : interior_projector(N, margin, l_ref);

    const DerivedParams d = derive(phys);
    double s = phys.e * d.B_tilde;
    if (!(s > 0.0) || !std::isfinite(s)) s = d.m_tilde * std::sqrt(std::max(d.varpi_sq, 0.0));
    if (!(s > 0.0) || !std::isfinite(s)) s = 1.0 / (l_ref * l_ref);
    const LadderPair lp = ladders_with_scale(s, cc);
    const BoppShift shift = bopp_shift(cc, phys.theta);

    // Highest retained basis state: the corner of the (projected) block.
    const Eigen::Index top = static_cast<Eigen::Index>(N - 1 - margin) * N + (N - 1 - margin);
    std::vector<AlgebraCheck> out;
    auto projected = [&](std::string name, const OperatorMatrix& c, Complex target) {
        AlgebraCheck check{std::move(name), projected_residual(c, target, projector),
                           c.entries(top, top), false};
        check.passed = check.residual < threshold;
        out.push_back(std::move(check));
    };
    auto whole = [&](std::string name, double residual) {
        out.push_back(AlgebraCheck{std::move(name), residual, Complex{}, residual < threshold});
    };

    projected("a_commutator", commutator(lp.a, adjoint(lp.a)), 1.0);
    projected("b_commutator", commutator(lp.b, adjoint(lp.b)), 1.0);
    {
        const double r1 = projected_residual(commutator(lp.a, lp.b), 0.0, projector);
        const double r2 = projected_residual(commutator(lp.a, adjoint(lp.b)), 0.0, projector);
        whole("ab_cross", std::max(r1, r2));
    }
    projected("deformed_algebra", commutator(shift.z_hat, shift.z_hat_bar), 2.0 * phys.theta);
    whole("lz_dual_form", max_deviation(angular_momentum(cc), angular_momentum_cartesian(ps)));
    whole("adjoint_pairing",
          std::max({max_deviation(adjoint(cc.z), cc.z_bar),
                    max_deviation(adjoint(cc.p_z), cc.p_z_bar),
                    max_deviation(adjoint(shift.z_hat), shift.z_hat_bar)}));
    return out;
}

}  // namespace ncspectra::fock
