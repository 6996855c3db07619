#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "ncspectra/params.hpp"

// Truncated two-mode Fock representations.
//
// Basis states |n_x, n_y> with 0 <= n_x, n_y < N are stored row-major:
// index = n_x * N + n_y. Mode x is therefore the slow index (op (x) I) and
// mode y the fast one (I (x) op).

namespace ncspectra::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class Mode { x, y };

/// Dense operator on the N^2-dimensional truncated basis.
struct OperatorMatrix {
    int cutoff = 0;       ///< per-mode cutoff N
    double l_ref = 1.0;   ///< length scale of the reference oscillator
    Matrix entries;
    std::string label;
    bool hermitian = false;

    Eigen::Index dim() const { return entries.rows(); }
};

/// Binary operations require identical cutoff and l_ref; otherwise DimensionMismatch.
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
/// Deterministic product: entries are accumulated over k in ascending order and
/// exact zeros are skipped, so identical monomials give bit-identical results.
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, const OperatorMatrix& a);
OperatorMatrix adjoint(const OperatorMatrix& a);

OperatorMatrix identity(int N, double l_ref = 1.0);

/// max |M_ij|
double max_abs(const OperatorMatrix& a);
/// max |M - M^dagger|
double hermiticity_defect(const OperatorMatrix& a);

/// Single-mode annihilation operator, a[n-1, n] = sqrt(n). Throws CutoffTooSmall for N < 2.
Matrix ladder(int N);

/// op (x) I for Mode::x, I (x) op for Mode::y.
OperatorMatrix embed_two_modes(const Matrix& op, Mode mode, int N, double l_ref = 1.0,
                               std::string label = {});

struct PhaseSpace {
    OperatorMatrix x, y, p_x, p_y;
};

/// x = l (a + a^dagger)/sqrt2, p_x = i (a^dagger - a)/(l sqrt2); likewise for y.
PhaseSpace position_momentum(int N, double l_ref);

struct ComplexCoords {
    OperatorMatrix z, z_bar, p_z, p_z_bar;
};

/// z = x + iy, z_bar = x - iy, p_z = (p_x - i p_y)/2, p_z_bar = (p_x + i p_y)/2.
ComplexCoords complex_coords(const PhaseSpace& ops);

/// L_z = i (z p_z - z_bar p_z_bar).
OperatorMatrix angular_momentum(const ComplexCoords& ops);
/// L_z = x p_y - y p_x; entry-identical to angular_momentum().
OperatorMatrix angular_momentum_cartesian(const PhaseSpace& ops);

enum class ShiftOrder { exact, first_order };

/// Non-commutative coordinates z^ = z + i theta p_z_bar, z^_bar = z_bar - i theta p_z.
///
/// The shift itself is always exact. `order` is carried for Hamiltonian assembly,
/// which drops theta^2 cross terms when it is ShiftOrder::first_order; the
/// unshifted coordinates and the theta-linear pieces are kept for that purpose.
struct BoppShift {
    OperatorMatrix z_hat, z_hat_bar;
    OperatorMatrix z, z_bar;                  ///< theta^0 pieces
    OperatorMatrix z_shift, z_bar_shift;      ///< theta^1 pieces: i theta p_z_bar, -i theta p_z
    double theta = 0.0;
    ShiftOrder order = ShiftOrder::exact;
};

BoppShift bopp_shift(const ComplexCoords& ops, double theta,
                     ShiftOrder order = ShiftOrder::exact);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Diagonal 0/1 projector onto n_x, n_y < N - margin. Requires 0 < margin < N.
OperatorMatrix interior_projector(int N, int margin, double l_ref = 1.0);

/// ceil(N / 5)
int default_margin(int N);

/// max |P (C - target I) P|
double projected_residual(const OperatorMatrix& c, Complex target, const OperatorMatrix& projector);

enum class LadderModel { landau, oscillator };

struct LadderPair {
    OperatorMatrix a, b;
    double scale = 0.0;  ///< e B_tilde (landau) or m_tilde varpi (oscillator)
};

/// a = (2i p_z + s z_bar)/(2 sqrt s), b = (2i p_z_bar + s z)/(2 sqrt s) with s = e B_tilde
/// for the Landau problem and s = m_tilde varpi for the oscillator.
///
/// The naive b with -2i p_z_bar is exactly a^dagger; the sign is flipped here so
/// that b is an independent mode ([b, b^dagger] = 1, [a, b] = 0). See naive_b_ladder().
LadderPair model_ladders(const PhysParams& phys, LadderModel model, const ComplexCoords& ops);

/// Same construction with an explicit scale s > 0 (InvalidScale otherwise).
LadderPair ladders_with_scale(double s, const ComplexCoords& ops);

/// The naive b operator, (-2i p_z_bar + s z)/(2 sqrt s). Diagnostic only.
OperatorMatrix naive_b_ladder(const PhysParams& phys, LadderModel model,
                              const ComplexCoords& ops);

struct StateVector {
    int cutoff = 0;
    Vector amplitudes;
    int n1 = 0;
    int n2 = 0;
};

/// Common vacuum of a and b: the null vector of a^dagger a + b^dagger b, found by
/// shifted inverse iteration from |0,0>. Phase fixed so the |0,0> amplitude is real >= 0.
StateVector ladder_vacuum(const LadderPair& ladders);

/// (a^dagger)^n1 (b^dagger)^n2 |0> / sqrt(n1! n2!), renormalised to remove truncation
/// leakage. Requires n1 + n2 < N - 1 and n1 + n2 <= 40.
StateVector build_number_state(int N, int n1, int n2, const LadderPair& ladders);
StateVector build_number_state(int N, int n1, int n2, const LadderPair& ladders,
                               const StateVector& vacuum);

/// One entry of the operator-algebra self-check.
struct AlgebraCheck {
    std::string name;
    double residual = 0.0;  ///< max |P (C - target) P|, or max entry deviation
    Complex corner{};       ///< C at the highest retained basis state, before subtraction
    bool passed = false;
};

inline constexpr double kAlgebraThreshold = 1e-9;

/// Runs a_commutator, b_commutator, ab_cross, deformed_algebra, lz_dual_form and
/// adjoint_pairing. Commutator checks are projected onto the interior (margin 0 means
/// no projection); the dual-form and adjoint checks compare whole matrices.
///
/// The ladders use the Landau scale e B_tilde when positive, else the oscillator scale
/// m_tilde varpi, else the reference scale 1 / l_ref^2.
std::vector<AlgebraCheck> algebra_suite(const PhysParams& phys, int N, int margin, double l_ref,
                                        double threshold = kAlgebraThreshold);

}  // namespace ncspectra::fock
