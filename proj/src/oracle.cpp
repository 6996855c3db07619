#include "ncspectra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "ncspectra/error.hpp"

namespace ncspectra::oracle {

using fock::Complex;
using fock::OperatorMatrix;

namespace {

constexpr ModelId kAllModels[] = {
    ModelId::landau_commutative,     ModelId::landau_nc_expanded, ModelId::landau_nc_shifted,
    ModelId::landau_critical,        ModelId::oscillator_commutative,
    ModelId::oscillator_nc_expanded, ModelId::oscillator_nc_shifted,
    ModelId::oscillator_critical,
};

std::string normalized(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

bool is_shifted(ModelId id) {
    return id == ModelId::landau_nc_shifted || id == ModelId::oscillator_nc_shifted;
}

// Operators shared by every assembly at one (N, l_ref).
struct Workspace {
    fock::ComplexCoords coords;
    OperatorMatrix kinetic;      // p_z p_z_bar
    OperatorMatrix confinement;  // z z_bar
    OperatorMatrix lz;
    OperatorMatrix id;

    Workspace(int N, double l_ref)
        : coords(fock::complex_coords(fock::position_momentum(N, l_ref))),
          kinetic(coords.p_z * coords.p_z_bar),
          confinement(coords.z * coords.z_bar),
          lz(fock::angular_momentum(coords)),
          id(fock::identity(N, l_ref)) {}
};

// A (theta^0 + theta^1) split operator; the product drops theta^2 when asked.
struct Split {
    OperatorMatrix zeroth;
    OperatorMatrix first;

    OperatorMatrix full() const { return zeroth + first; }
};

OperatorMatrix product(const Split& a, const Split& b, fock::ShiftOrder order) {
    if (order == fock::ShiftOrder::exact) return a.full() * b.full();
    return a.zeroth * b.zeroth + (a.zeroth * b.first + a.first * b.zeroth);
}

Split adjoint(const Split& s) { return {fock::adjoint(s.zeroth), fock::adjoint(s.first)}; }

OperatorMatrix to_ebar_scale(const OperatorMatrix& block, const PhysParams& p,
                             const Workspace& w) {
    const double eB = p.e * p.B;
    return Complex(1.0 / (2.0 * p.m)) * (block + Complex(eB) * w.id);
}

OperatorMatrix assemble_shifted(ModelId id, const PhysParams& p, fock::ShiftOrder order,
                                const Workspace& w) {
    const fock::BoppShift shift = fock::bopp_shift(w.coords, p.theta, order);
    const Complex coupling(0.0, p.e * p.B / 2.0);
    // D = 2 p_z + i (eB/2) z^_bar, split into its theta^0 and theta^1 parts.
    const Split d{Complex(2.0) * w.coords.p_z + coupling * shift.z_bar,
                  coupling * shift.z_bar_shift};
    const Split d_dag = adjoint(d);
    const bool upper = p.s_z > 0.0;
    OperatorMatrix block = upper ? product(d, d_dag, order) : product(d_dag, d, order);

    if (id == ModelId::oscillator_nc_shifted) {
        const Split zh{shift.z, shift.z_shift};
        const Split zh_bar{shift.z_bar, shift.z_bar_shift};
        const double mw = p.m * p.omega;
        OperatorMatrix radial = upper ? product(zh_bar, zh, order) : product(zh, zh_bar, order);
        block = block + Complex(mw * mw) * radial;
    }
    return to_ebar_scale(block, p, w);
}

// Quadratic monomials are assembled one level above the cutoff and restricted back, so
// the retained block carries exact matrix elements (a Galerkin compression) instead of
// the boundary artefacts of products of truncated ladders.
constexpr int kPad = 1;

OperatorMatrix crop(const OperatorMatrix& big, int N) {
    const int M = big.cutoff;
    const Eigen::Index d = static_cast<Eigen::Index>(N) * N;
    std::vector<Eigen::Index> map(d);
    for (int nx = 0; nx < N; ++nx) {
        for (int ny = 0; ny < N; ++ny) map[nx * N + ny] = static_cast<Eigen::Index>(nx) * M + ny;
    }
    fock::Matrix out(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) out(i, j) = big.entries(map[i], map[j]);
    }
    return OperatorMatrix{N, big.l_ref, std::move(out), big.label, big.hermitian};
}

OperatorMatrix quadratic(const Workspace& w, double kinetic, double confinement, double angular,
                         double constant) {
    return Complex(kinetic) * w.kinetic + Complex(confinement) * w.confinement -
           Complex(angular) * w.lz + Complex(constant) * w.id;
}

void require_not_at_oscillator_critical(const PhysParams& p) {
    if (p.theta == 0.0) return;
    const double b_c = analytic::critical_field_oscillator(p);
    if (std::abs(p.B - b_c) <= 1e-12 * std::abs(b_c)) {
        throw Error(ErrorKind::IllPosed,
                    "B is at the critical field; the deformed closed forms degenerate there");
    }
}

std::string family_of(ModelId id) {
    switch (id) {
        case ModelId::landau_commutative: return "landau_commutative";
        case ModelId::landau_nc_expanded:
        case ModelId::landau_nc_shifted: return "landau";
        case ModelId::landau_critical: return "landau_critical";
        case ModelId::oscillator_commutative: return "oscillator_commutative";
        case ModelId::oscillator_nc_expanded:
        case ModelId::oscillator_nc_shifted: return "oscillator";
        case ModelId::oscillator_critical: return "oscillator_critical";
    }
    return {};
}

struct Candidate {
    double value;
    analytic::LevelIndex level;
};

std::vector<Candidate> enumerate(const analytic::Variant& v, const PhysParams& p, int bound) {
    std::vector<Candidate> out;
    const int sigma = p.sigma_z();
    for (int n1 = 0; n1 <= bound; ++n1) {
        if (v.single_index) {
            analytic::LevelIndex l{n1, 0, sigma};
            out.push_back({v.e_bar(p, l), l});
            continue;
        }
        for (int n2 = 0; n2 <= bound; ++n2) {
            analytic::LevelIndex l{n1, n2, sigma};
            out.push_back({v.e_bar(p, l), l});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    return out;
}

// Frequencies of the isotropic-oscillator-plus-rotation form H = w (N+1) - W L_z + c.
// The spectrum is bounded below iff |W| <= w.
std::optional<std::pair<double, double>> rotation_frequencies(ModelId id, const PhysParams& p) {
    const DerivedParams d = derive(p);
    switch (id) {
        case ModelId::landau_nc_expanded:
            return std::pair{d.omega_tilde, analytic::landau_lz_coefficient(p)};
        case ModelId::oscillator_nc_expanded:
            return std::pair{std::sqrt(d.varpi_sq), analytic::oscillator_lz_coefficient(p)};
        default: return std::nullopt;
    }
}

}  // namespace

std::string_view to_string(ModelId id) {
    switch (id) {
        case ModelId::landau_commutative: return "landau_commutative";
        case ModelId::landau_nc_expanded: return "landau_nc_expanded";
        case ModelId::landau_nc_shifted: return "landau_nc_shifted";
        case ModelId::landau_critical: return "landau_critical";
        case ModelId::oscillator_commutative: return "oscillator_commutative";
        case ModelId::oscillator_nc_expanded: return "oscillator_nc_expanded";
        case ModelId::oscillator_nc_shifted: return "oscillator_nc_shifted";
        case ModelId::oscillator_critical: return "oscillator_critical";
    }
    return "unknown";
}

ModelId parse_model_id(std::string_view name) {
    const std::string s = normalized(name);
    if (s == "landau_nc") return ModelId::landau_nc_expanded;
    if (s == "oscillator_nc") return ModelId::oscillator_nc_expanded;
    for (ModelId id : kAllModels) {
        if (s == to_string(id)) return id;
    }
    throw Error(ErrorKind::UnknownModel, "unknown Hamiltonian model '" + std::string(name) + "'");
}

std::string_view gauge_descriptor(ModelId id) {
    switch (id) {
        case ModelId::landau_commutative:
        case ModelId::landau_nc_expanded:
        case ModelId::landau_nc_shifted:
        case ModelId::landau_critical: return "symmetric complex gauge A = (iBz/2, -iBz_bar/2)";
        default: return "complex gauge A = (-iBz_bar/2, iBz/2)";
    }
}

OperatorMatrix assemble(const HamiltonianModel& model, const PhysParams& p, int N,
                        double l_ref) {
    if (N < 8) throw Error(ErrorKind::CutoffTooSmall, "assembly needs a per-mode cutoff >= 8");
    const DerivedParams d = derive(p);
    const double eB = p.e * p.B;

    // Parameter checks first so ill-posed inputs fail before any matrix work.
    switch (model.id) {
        case ModelId::landau_nc_expanded:
            if (!(d.m_tilde > 0.0)) throw Error(ErrorKind::IllPosed, "m_tilde <= 0");
            break;
        case ModelId::landau_critical: {
            if (!(eB > 0.0)) throw Error(ErrorKind::InvalidField, "landau_critical needs eB > 0");
            // m_tilde at theta_c = -4/eB is -m: the kinetic term has the wrong sign.
            throw Error(ErrorKind::IllPosed, "m_tilde = -m at the critical theta");
        }
        case ModelId::oscillator_commutative:
            if (!(p.omega * p.omega + d.omega_c * d.omega_c > 0.0)) {
                throw Error(ErrorKind::IllPosed, "omega^2 + omega_c^2 must be > 0");
            }
            break;
        case ModelId::oscillator_nc_expanded:
        case ModelId::oscillator_nc_shifted:
            if (!d.well_posed_oscillator) {
                throw Error(ErrorKind::IllPosed, "oscillator models need m_tilde > 0, varpi^2 > 0");
            }
            break;
        case ModelId::oscillator_critical: {
            if (p.omega == 0.0) throw Error(ErrorKind::InvalidField, "omega must be != 0");
            const double b_c = analytic::critical_field_oscillator(p);
            if (std::abs(p.B - b_c) > 1e-9 * std::max(std::abs(b_c), std::abs(p.B))) {
                throw Error(ErrorKind::NotAtCriticalPoint, "B differs from the critical field");
            }
            break;
        }
        default: break;
    }

    const Workspace w(N + kPad, l_ref);
    OperatorMatrix h;
    switch (model.id) {
        case ModelId::landau_commutative: {
            const Split dd{Complex(2.0) * w.coords.p_z + Complex(0.0, eB / 2.0) * w.coords.z_bar,
                           Complex(0.0) * w.id};
            h = to_ebar_scale(product(dd, adjoint(dd), fock::ShiftOrder::first_order), p, w);
            break;
        }
        case ModelId::landau_nc_expanded: {
            const double field = 1.0 + eB * p.theta / 4.0;
            h = quadratic(w, 2.0 / d.m_tilde, d.m_tilde * d.omega_tilde * d.omega_tilde / 2.0,
                          d.omega_c * field, -p.s_z * eB * eB * p.theta / (4.0 * p.m));
            break;
        }
        case ModelId::landau_nc_shifted:
        case ModelId::oscillator_nc_shifted:
            h = assemble_shifted(model.id, p, model.shift_order, w);
            break;
        case ModelId::oscillator_commutative:
            h = quadratic(w, 2.0 / p.m, p.m * (p.omega * p.omega + d.omega_c * d.omega_c) / 2.0,
                          d.omega_c, 0.0);
            break;
        case ModelId::oscillator_nc_expanded:
            h = quadratic(w, 2.0 / d.m_tilde, d.m_tilde * d.varpi_sq / 2.0,
                          d.m_tilde * d.varpi_sq * p.theta / 2.0 + d.omega_c,
                          p.s_z * p.m * d.varpi_sq * p.theta);
            break;
        case ModelId::oscillator_critical: {
            const double w_sq = p.omega * p.omega + d.omega_c * d.omega_c;
            h = quadratic(w, 2.0 / p.m, p.m * w_sq / 2.0, 0.0,
                          -2.0 * w_sq / (p.m * p.m * p.omega * p.omega) * p.s_z * p.B);
            break;
        }
        case ModelId::landau_critical: break;  // rejected above
    }
    h = crop(h, N);
    h.label = std::string(to_string(model.id));
    h.hermitian = true;
    return h;
}

std::vector<double> eigen_hermitian(const fock::Matrix& m, int k) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    if (k < 1 || k > m.rows()) {
        throw Error(ErrorKind::InvalidArgument, "k must satisfy 1 <= k <= dimension");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-10 * scale) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian");
    const fock::Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<fock::Matrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NotConverged, "Hermitian eigensolver failed");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    return std::vector<double>(values.data(), values.data() + k);
}

std::vector<double> eigen_hermitian(const OperatorMatrix& m, int k) {
    return eigen_hermitian(m.entries, k);
}

ConvergenceResult converge(const HamiltonianModel& model, const PhysParams& phys, int k,
                           double tol, const std::vector<int>& schedule,
                           std::optional<double> l_ref) {
    if (schedule.size() < 2) throw Error(ErrorKind::InvalidArgument, "schedule needs >= 2 cutoffs");
    if (!std::is_sorted(schedule.begin(), schedule.end()) ||
        std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end()) {
        throw Error(ErrorKind::InvalidArgument, "schedule must be strictly ascending");
    }
    if (k < 1 || static_cast<long>(k) > static_cast<long>(schedule.front()) * schedule.front()) {
        throw Error(ErrorKind::InvalidArgument, "k must satisfy 1 <= k <= N^2");
    }
    ConvergenceResult result;
    result.l_ref = l_ref.value_or(default_l_ref(phys));
    result.delta = std::numeric_limits<double>::infinity();
    std::vector<double> previous;
    for (int N : schedule) {
        std::vector<double> current = eigen_hermitian(assemble(model, phys, N, result.l_ref), k);
        if (!previous.empty()) {
            double delta = 0.0;
            for (int i = 0; i < k; ++i) delta = std::max(delta, std::abs(current[i] - previous[i]));
            result.delta = delta;
        }
        result.eigenvalues = current;
        result.cutoff_used = N;
        if (!previous.empty() && result.delta < tol) {
            result.converged = true;
            return result;
        }
        previous = std::move(current);
    }
    return result;
}

VerificationReport verify(const HamiltonianModel& model, const PhysParams& phys, int k,
                          double tol, const std::vector<int>& schedule,
                          std::optional<double> l_ref) {
    if (is_shifted(model.id) && model.shift_order == fock::ShiftOrder::exact) {
        throw Error(ErrorKind::AnalyticUnavailable,
                    "closed forms are first order in theta; verify shifted models with "
                    "first_order shift");
    }
    if (model.id == ModelId::oscillator_nc_expanded || model.id == ModelId::oscillator_nc_shifted) {
        require_not_at_oscillator_critical(phys);
    }

    VerificationReport report;
    report.model = model.id;
    report.phys = phys;
    report.k = k;
    report.tolerance = tol;
    report.schedule = schedule;

    const ConvergenceResult conv = converge(model, phys, k, tol, schedule, l_ref);
    report.numeric = conv.eigenvalues;
    report.cutoff = conv.cutoff_used;
    report.convergence_delta = conv.delta;
    report.converged = conv.converged;
    report.l_ref = conv.l_ref;
    if (!conv.converged) {
        report.notes.push_back("lowest eigenvalues did not settle within the cutoff schedule");
    }
    if (auto freq = rotation_frequencies(model.id, phys)) {
        if (std::abs(freq->second) > std::abs(freq->first)) {
            report.notes.push_back(
                "L_z coefficient exceeds the oscillator frequency: the operator is unbounded "
                "below and its lowest truncated eigenvalues are cutoff artefacts");
        }
    }

    const int bound = std::max(k, analytic::kDefaultLevelBound) + 1;
    std::size_t best = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<std::vector<Candidate>> candidates;
    for (const auto& variant : analytic::variants_for(family_of(model.id))) {
        VariantComparison cmp;
        cmp.name = variant.name;
        cmp.source = variant.source;
        candidates.push_back(enumerate(variant, phys, variant.single_index ? k + 1 : bound));
        const auto& pool = candidates.back();
        for (int i = 0; i < k; ++i) {
            const double predicted = i < static_cast<int>(pool.size())
                                         ? pool[i].value
                                         : std::numeric_limits<double>::quiet_NaN();
            cmp.predicted.push_back(predicted);
            const double r = std::abs(report.numeric[i] - predicted);
            cmp.residuals.push_back(r);
            cmp.max_residual = std::isnan(r) ? r : std::max(cmp.max_residual, r);
        }
        if (cmp.max_residual < best_residual) {
            best_residual = cmp.max_residual;
            best = report.variants.size();
        }
        report.variants.push_back(std::move(cmp));
    }
    if (!report.variants.empty() && best_residual <= tol) {
        report.matched_variant = report.variants[best].name;
    }

    if (!candidates.empty()) {
        const auto& pool = candidates[best];
        for (double value : report.numeric) {
            LevelAssignment a;
            a.numeric = value;
            double first = std::numeric_limits<double>::infinity();
            double second = first;
            for (const auto& c : pool) {
                const double dist = std::abs(c.value - value);
                if (dist < first) {
                    second = first;
                    first = dist;
                    a.level = c.level;
                } else if (dist < second) {
                    second = dist;
                }
            }
            a.distance = first;
            a.tie = second - first <= tol;
            report.assignment.push_back(a);
        }
    }
    return report;
}

QuadraticCoefficients decompose_quadratic(const OperatorMatrix& h, const PhysParams& phys,
                                          int margin) {
    (void)phys;
    const Workspace w(h.cutoff + kPad, h.l_ref);
    const OperatorMatrix projector = fock::interior_projector(h.cutoff, margin, h.l_ref);
    const OperatorMatrix monomials[] = {crop(w.kinetic, h.cutoff), crop(w.confinement, h.cutoff),
                                        crop(w.lz, h.cutoff), crop(w.id, h.cutoff)};
    const OperatorMatrix* basis[] = {&monomials[0], &monomials[1], &monomials[2], &monomials[3]};

    std::vector<Eigen::Index> interior;
    for (Eigen::Index i = 0; i < h.dim(); ++i) {
        if (projector.entries(i, i) != Complex{}) interior.push_back(i);
    }
    Eigen::Matrix4cd gram = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
    for (Eigen::Index j : interior) {
        for (Eigen::Index i : interior) {
            Complex b[4];
            for (int a = 0; a < 4; ++a) b[a] = basis[a]->entries(i, j);
            for (int a = 0; a < 4; ++a) {
                for (int c = 0; c < 4; ++c) gram(a, c) += std::conj(b[a]) * b[c];
                rhs(a) += std::conj(b[a]) * h.entries(i, j);
            }
        }
    }
    const Eigen::Vector4cd coef = gram.fullPivLu().solve(rhs);
    QuadraticCoefficients out;
    out.kinetic = coef(0).real();
    out.confinement = coef(1).real();
    out.angular = -coef(2).real();  // reported as the coefficient of -L_z
    out.constant = coef(3).real();
    for (Eigen::Index j : interior) {
        for (Eigen::Index i : interior) {
            Complex fit{};
            for (int a = 0; a < 4; ++a) fit += coef(a) * basis[a]->entries(i, j);
            out.fit_residual = std::max(out.fit_residual, std::abs(h.entries(i, j) - fit));
        }
    }
    return out;
}

GaugeComparison gauge_compare(GaugePair pair, const PhysParams& phys, int N, double l_ref) {
    const ModelId shifted =
        pair == GaugePair::landau ? ModelId::landau_nc_shifted : ModelId::oscillator_nc_shifted;
    const ModelId expanded =
        pair == GaugePair::landau ? ModelId::landau_nc_expanded : ModelId::oscillator_nc_expanded;
    const int margin = fock::default_margin(N);
    const OperatorMatrix projector = fock::interior_projector(N, margin, l_ref);

    auto residual_at = [&](double theta) {
        PhysParams p = phys;
        p.theta = theta;
        const OperatorMatrix a =
            assemble({shifted, fock::ShiftOrder::first_order}, p, N, l_ref);
        const OperatorMatrix b = assemble({expanded}, p, N, l_ref);
        return fock::projected_residual(a - b, 0.0, projector);
    };

    GaugeComparison out;
    out.residual = residual_at(phys.theta);
    out.residual_half = residual_at(phys.theta / 2.0);
    out.ratio = out.residual_half > 0.0 ? out.residual / out.residual_half
                                        : std::numeric_limits<double>::quiet_NaN();
    out.theta_order_estimate = std::log2(out.ratio);
    out.first_order_agreement =
        out.residual < 1e-9 || (out.ratio >= 3.5 && out.ratio <= 4.5);

    const OperatorMatrix first = assemble({shifted, fock::ShiftOrder::first_order}, phys, N, l_ref);
    const OperatorMatrix exact = assemble({shifted, fock::ShiftOrder::exact}, phys, N, l_ref);
    const OperatorMatrix expanded_h = assemble({expanded}, phys, N, l_ref);
    out.exact_vs_first_order = fock::projected_residual(exact - first, 0.0, projector);
    out.shifted_first_order = decompose_quadratic(first, phys, margin);
    out.shifted_exact = decompose_quadratic(exact, phys, margin);
    out.expanded = decompose_quadratic(expanded_h, phys, margin);
    return out;
}

RayleighCheck rayleigh(const OperatorMatrix& h, const fock::Vector& v) {
    if (v.size() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "state size mismatch");
    const fock::Vector hv = h.entries * v;
    RayleighCheck out;
    out.quotient = v.dot(hv).real() / v.squaredNorm();
    out.residual = (hv - out.quotient * v).norm();
    return out;
}

std::vector<double> spin_gap(const HamiltonianModel& model, const PhysParams& phys, int k, int N,
                             double l_ref) {
    PhysParams up = phys;
    PhysParams down = phys;
    up.s_z = 0.5;
    down.s_z = -0.5;
    const auto e_up = eigen_hermitian(assemble(model, up, N, l_ref), k);
    const auto e_down = eigen_hermitian(assemble(model, down, N, l_ref), k);
    std::vector<double> gaps(k);
    for (int i = 0; i < k; ++i) gaps[i] = 2.0 * phys.m * (e_up[i] - e_down[i]);
    return gaps;
}

}  // namespace ncspectra::oracle
