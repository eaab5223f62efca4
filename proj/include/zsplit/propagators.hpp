#pragma once

#include "zsplit/linalg.hpp"

#include <vector>

namespace zsplit {

/// Linear Cauchy problem c' = (A + B) c, c(0) = c0 on [0, t_end].
class SplitProblem {
public:
    SplitProblem(Matrix a, Matrix b, Vector c0, double t_end);

    const Matrix& a() const noexcept { return a_; }
    const Matrix& b() const noexcept { return b_; }
    const Vector& c0() const noexcept { return c0_; }
    double t_end() const noexcept { return t_end_; }
    std::size_t dim() const noexcept { return c0_.dim(); }

    /// Same initial data and horizon with the operators exchanged.
    SplitProblem swapped() const { return SplitProblem(b_, a_, c0_, t_end_); }

private:
    Matrix a_;
    Matrix b_;
    Vector c0_;
    double t_end_;
};

inline constexpr int kMaxZassenhausOrder = 4;

/// Correction matrices C_2..C_order of the Zassenhaus product
///   exp(t(A+B)) = exp(tA) exp(tB) exp(t^2 C_2) exp(t^3 C_3) ... .
class ZassenhausExpansion {
public:
    int order() const noexcept { return order_; }
    const std::vector<Matrix>& corrections() const noexcept { return corrections_; }
    /// C_k for 2 <= k <= order.
    const Matrix& correction(int k) const;

private:
    friend ZassenhausExpansion zassenhaus_expansion(const Matrix& a, const Matrix& b, int order);
    ZassenhausExpansion(int order, std::vector<Matrix> corrections)
        : order_(order), corrections_(std::move(corrections))
    {
    }

    int order_;
    std::vector<Matrix> corrections_;
};

/// Builds C_2..C_order for 1 <= order <= 4.
///
/// The closed forms are checked by matching the Taylor coefficients of the
/// truncated product against exp(t(A+B)) up to degree `order`; a mismatch
/// raises UnsupportedOrderError instead of returning a lower-order scheme.
ZassenhausExpansion zassenhaus_expansion(const Matrix& a, const Matrix& b, int order);

/// Largest deviation between the degree-k Taylor coefficients (k <= order) of
/// exp(tA) exp(tB) prod_j exp(t^j C_j) and of exp(t(A+B)), scaled by the
/// magnitude of the exact coefficient.
double taylor_mismatch(const Matrix& a, const Matrix& b, const ZassenhausExpansion& expansion);

// One-step propagator matrices. The *_step functions apply them to a vector.

Matrix exact_propagator(const SplitProblem& p, double tau);
Matrix lie_trotter_propagator(const SplitProblem& p, double tau);
Matrix strang_propagator(const SplitProblem& p, double tau);
Matrix zassenhaus_propagator(const SplitProblem& p, const ZassenhausExpansion& expansion, double tau);
Matrix zassenhaus_propagator(const SplitProblem& p, double tau, int order);

/// exp((A+B) tau) c. Reference for every error measurement.
Vector exact_step(const SplitProblem& p, double tau, const Vector& c);
/// exp(A tau) exp(B tau) c.
Vector lie_trotter_step(const SplitProblem& p, double tau, const Vector& c);
/// exp(A tau/2) exp(B tau) exp(A tau/2) c.
Vector strang_step(const SplitProblem& p, double tau, const Vector& c);
/// exp(A tau) exp(B tau) exp(C_2 tau^2) ... exp(C_order tau^order) c, rightmost factor first.
Vector zassenhaus_step(const SplitProblem& p, double tau, int order, const Vector& c);

} // namespace zsplit
