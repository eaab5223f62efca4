#include "zsplit/propagators.hpp"

#include "zsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zsplit {

namespace {

constexpr double kCertificationTolerance = 1e-10;

void require_positive_step(double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("step size must be positive and finite");
    }
}

void require_order(int order)
{
    if (order < 1 || order > kMaxZassenhausOrder) {
        throw UnsupportedOrderError("Zassenhaus order " + std::to_string(order) + " outside [1, " +
                                    std::to_string(kMaxZassenhausOrder) + "]");
    }
}

void require_dim(const SplitProblem& p, const Vector& c)
{
    if (c.dim() != p.dim()) {
        throw ShapeError("state dimension does not match the problem");
    }
}

/// Matrix-valued polynomial in t truncated at a fixed degree.
class TruncatedSeries {
public:
    TruncatedSeries(std::size_t n, int degree) : coeffs_(static_cast<std::size_t>(degree) + 1, Matrix(n, n))
    {
        coeffs_[0] = Matrix::identity(n);
    }

    /// Series of exp(t^power * m), truncated.
    static TruncatedSeries exponential(const Matrix& m, int power, int degree)
    {
        TruncatedSeries s(m.rows(), degree);
        Matrix term = Matrix::identity(m.rows());
        for (int j = 1; j * power <= degree; ++j) {
            term = (1.0 / j) * (term * m);
            s.coeffs_[static_cast<std::size_t>(j * power)] += term;
        }
        return s;
    }

    TruncatedSeries times(const TruncatedSeries& rhs) const
    {
        const int degree = this->degree();
        TruncatedSeries out(coeffs_[0].rows(), degree);
        out.coeffs_[0] = Matrix(coeffs_[0].rows(), coeffs_[0].rows());
        for (int i = 0; i <= degree; ++i) {
            for (int j = 0; i + j <= degree; ++j) {
                out.coeffs_[static_cast<std::size_t>(i + j)] +=
                    coeffs_[static_cast<std::size_t>(i)] * rhs.coeffs_[static_cast<std::size_t>(j)];
            }
        }
        return out;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Matrix& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

private:
    std::vector<Matrix> coeffs_;
};

} // namespace

SplitProblem::SplitProblem(Matrix a, Matrix b, Vector c0, double t_end)
    : a_(std::move(a)), b_(std::move(b)), c0_(std::move(c0)), t_end_(t_end)
{
    if (!a_.square() || !b_.square()) {
        throw ShapeError("SplitProblem: operators must be square");
    }
    if (a_.rows() != b_.rows() || a_.rows() != c0_.dim()) {
        throw ShapeError("SplitProblem: operator and initial-value dimensions differ");
    }
    if (!(t_end_ > 0.0) || !std::isfinite(t_end_)) {
        throw DomainError("SplitProblem: t_end must be positive");
    }
}

const Matrix& ZassenhausExpansion::correction(int k) const
{
    if (k < 2 || k > order_) {
        throw UnsupportedOrderError("no correction C_" + std::to_string(k) + " in an order-" +
                                    std::to_string(order_) + " expansion");
    }
    return corrections_[static_cast<std::size_t>(k - 2)];
}

ZassenhausExpansion zassenhaus_expansion(const Matrix& a, const Matrix& b, int order)
{
    require_order(order);
    const Matrix ab = commutator(a, b);

    std::vector<Matrix> corrections;
    if (order >= 2) {
        corrections.push_back(-0.5 * ab);
    }
    if (order >= 3) {
        corrections.push_back((1.0 / 3.0) * commutator(b, ab) + (1.0 / 6.0) * commutator(a, ab));
    }
    if (order >= 4) {
        const Matrix ab_a = commutator(ab, a);
        const Matrix ab_b = commutator(ab, b);
        corrections.push_back((-1.0 / 24.0) * (commutator(ab_a, a) + 3.0 * commutator(ab_a, b) +
                                                3.0 * commutator(ab_b, b)));
    }

    ZassenhausExpansion expansion(order, std::move(corrections));
    if (order >= 4) {
        const double mismatch = taylor_mismatch(a, b, expansion);
        if (!(mismatch <= kCertificationTolerance)) {
            throw UnsupportedOrderError("order-4 Zassenhaus correction failed Taylor certification (mismatch " +
                                        std::to_string(mismatch) + ")");
        }
    }
    return expansion;
}

double taylor_mismatch(const Matrix& a, const Matrix& b, const ZassenhausExpansion& expansion)
{
    const int degree = expansion.order();
    const Matrix sum = a + b;

    TruncatedSeries product = TruncatedSeries::exponential(a, 1, degree).times(TruncatedSeries::exponential(b, 1, degree));
    for (int k = 2; k <= degree; ++k) {
        product = product.times(TruncatedSeries::exponential(expansion.correction(k), k, degree));
    }
    const TruncatedSeries exact = TruncatedSeries::exponential(sum, 1, degree);

    // Scale by (||A|| + ||B||)^k / k! so the check is relative for any operator size.
    const double scale = std::max(a.norm1() + b.norm1(), 1.0);
    double worst = 0.0;
    double factor = 1.0;
    for (int k = 0; k <= degree; ++k) {
        if (k > 0) {
            factor *= scale / k;
        }
        const double diff = probe_norm(product.coeff(k) - exact.coeff(k));
        worst = std::max(worst, diff / factor);
    }
    return worst;
}

Matrix exact_propagator(const SplitProblem& p, double tau)
{
    require_positive_step(tau);
    return matrix_exp(p.a() + p.b(), tau);
}

Matrix lie_trotter_propagator(const SplitProblem& p, double tau)
{
    require_positive_step(tau);
    return matrix_exp(p.a(), tau) * matrix_exp(p.b(), tau);
}

Matrix strang_propagator(const SplitProblem& p, double tau)
{
    require_positive_step(tau);
    const Matrix half = matrix_exp(p.a(), 0.5 * tau);
    return half * matrix_exp(p.b(), tau) * half;
}

Matrix zassenhaus_propagator(const SplitProblem& p, const ZassenhausExpansion& expansion, double tau)
{
    require_positive_step(tau);
    Matrix out = lie_trotter_propagator(p, tau);
    double tau_power = tau;
    for (int k = 2; k <= expansion.order(); ++k) {
        tau_power *= tau;
        out = out * matrix_exp(expansion.correction(k), tau_power);
    }
    return out;
}

Matrix zassenhaus_propagator(const SplitProblem& p, double tau, int order)
{
    return zassenhaus_propagator(p, zassenhaus_expansion(p.a(), p.b(), order), tau);
}

Vector exact_step(const SplitProblem& p, double tau, const Vector& c)
{
    require_dim(p, c);
    return exact_propagator(p, tau) * c;
}

Vector lie_trotter_step(const SplitProblem& p, double tau, const Vector& c)
{
    require_dim(p, c);
    require_positive_step(tau);
    return matrix_exp(p.a(), tau) * (matrix_exp(p.b(), tau) * c);
}

Vector strang_step(const SplitProblem& p, double tau, const Vector& c)
{
    require_dim(p, c);
    require_positive_step(tau);
    const Matrix half = matrix_exp(p.a(), 0.5 * tau);
    return half * (matrix_exp(p.b(), tau) * (half * c));
}

Vector zassenhaus_step(const SplitProblem& p, double tau, int order, const Vector& c)
{
    require_dim(p, c);
    require_positive_step(tau);
    const ZassenhausExpansion expansion = zassenhaus_expansion(p.a(), p.b(), order);
    Vector out = c;
    double tau_power = std::pow(tau, order);
    for (int k = order; k >= 2; --k) {
        out = matrix_exp(expansion.correction(k), tau_power) * out;
        tau_power /= tau;
    }
    return matrix_exp(p.a(), tau) * (matrix_exp(p.b(), tau) * out);
}

} // namespace zsplit
