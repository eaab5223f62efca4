#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check.

#include "zsplit/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using zsplit::Matrix;
using zsplit::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n * n);
    for (double& x : v) {
        x = dist(rng);
    }
    return Matrix(n, n, std::move(v));
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(rng);
    }
    return Vector(std::move(v));
}

/// Scales m so that its maximum absolute row sum equals `target`.
inline Matrix with_norm(const Matrix& m, double target)
{
    return (target / m.norm_inf()) * m;
}

/// Plain triple loop, no shortcuts.
inline std::vector<std::vector<double>> naive_product(const Matrix& a, const Matrix& b)
{
    std::vector<std::vector<double>> out(a.rows(), std::vector<double>(b.cols(), 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (std::size_t k = 0; k < a.cols(); ++k) {
                out[i][j] += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

/// sum_{k <= terms} (tA)^k / k! with no scaling.
inline Matrix taylor_exp(const Matrix& a, double t, int terms = 30)
{
    const std::size_t n = a.rows();
    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= terms; ++k) {
        term = (t / k) * (term * a);
        sum += term;
    }
    return sum;
}

/// Largest entrywise difference.
inline double max_diff(const Matrix& a, const Matrix& b)
{
    double d = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            d = std::max(d, std::abs(a(r, c) - b(r, c)));
        }
    }
    return d;
}

inline double max_diff(const Vector& a, const Vector& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

/// Classical RK4 for c' = M c with `steps` uniform steps.
inline Vector rk4_linear(const Matrix& m, const Vector& c0, double t, long steps)
{
    const double h = t / static_cast<double>(steps);
    Vector y = c0;
    for (long s = 0; s < steps; ++s) {
        const Vector k1 = m * y;
        const Vector k2 = m * (y + (0.5 * h) * k1);
        const Vector k3 = m * (y + (0.5 * h) * k2);
        const Vector k4 = m * (y + h * k3);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

/// Coefficients P_0..P_K of a matrix power series in t, truncated at degree K.
using Series = std::vector<Matrix>;

inline Series series_identity(std::size_t n, int degree)
{
    Series s(static_cast<std::size_t>(degree) + 1, Matrix(n, n));
    s[0] = Matrix::identity(n);
    return s;
}

/// exp(t^power M) truncated at `degree`.
inline Series series_exp(const Matrix& m, int power, int degree)
{
    Series s = series_identity(m.rows(), degree);
    Matrix mk = Matrix::identity(m.rows());
    double factorial = 1.0;
    for (int k = 1; k * power <= degree; ++k) {
        mk = mk * m;
        factorial *= k;
        s[static_cast<std::size_t>(k * power)] = (1.0 / factorial) * mk;
    }
    return s;
}

/// Cauchy product of two truncated series.
inline Series series_mul(const Series& x, const Series& y)
{
    const std::size_t len = x.size();
    const std::size_t n = x[0].rows();
    Series out(len, Matrix(n, n));
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = 0; i + j < len; ++j) {
            out[i + j] += x[i] * y[j];
        }
    }
    return out;
}

/// Least-squares slope of log(y) against log(x), written independently of the library fit.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Slope of log(error) vs log(tau) over tau = 2^-lo .. 2^-hi, ignoring errors at the roundoff floor.
inline double fitted_local_order(const std::function<double(double)>& error_of, int lo, int hi, double floor)
{
    std::vector<double> taus;
    std::vector<double> errs;
    for (int k = lo; k <= hi; ++k) {
        const double tau = std::ldexp(1.0, -k);
        const double e = error_of(tau);
        if (e > floor) {
            taus.push_back(tau);
            errs.push_back(e);
        }
    }
    if (taus.size() < 3) {
        return std::nan("");
    }
    return loglog_slope(taus, errs);
}

} // namespace oracle
