#include "zsplit/linalg.hpp"

#include "zsplit/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

namespace zsplit {

namespace {

void require_finite(std::span<const double> values, const char* what)
{
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw NumericRangeError(std::string(what) + ": non-finite entry");
        }
    }
}

std::string shape_string(const Matrix& m)
{
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a) + " vs " + shape_string(b));
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(std::size_t dim, double fill) : data_(dim, fill)
{
    require_finite(data_, "Vector");
}

Vector::Vector(std::vector<double> entries) : data_(std::move(entries))
{
    require_finite(data_, "Vector");
}

Vector::Vector(std::initializer_list<double> entries) : data_(entries)
{
    require_finite(data_, "Vector");
}

Vector& Vector::operator+=(const Vector& other)
{
    if (dim() != other.dim()) {
        throw ShapeError("Vector +=: dimension mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Vector& Vector::operator-=(const Vector& other)
{
    if (dim() != other.dim()) {
        throw ShapeError("Vector -=: dimension mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Vector& Vector::operator*=(double s)
{
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

void Vector::axpy(double s, const Vector& x)
{
    if (dim() != x.dim()) {
        throw ShapeError("Vector axpy: dimension mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += s * x.data_[i];
    }
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector v) { return v *= s; }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0)
{
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major))
{
    if (data_.size() != rows * cols) {
        throw ShapeError("Matrix: entry count does not match rows*cols");
    }
    require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size())
{
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ShapeError("Matrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag)
{
    require_finite(diag, "Matrix::diagonal");
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> diag)
{
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    require_same_shape(*this, other, "Matrix +=");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other)
{
    require_same_shape(*this, other, "Matrix -=");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator*=(double s)
{
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

double Matrix::norm1() const noexcept
{
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            sum += std::abs((*this)(r, c));
        }
        best = std::max(best, sum);
    }
    return best;
}

double Matrix::norm_inf() const noexcept
{
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            sum += std::abs((*this)(r, c));
        }
        best = std::max(best, sum);
    }
    return best;
}

double Matrix::max_abs() const noexcept
{
    double best = 0.0;
    for (double v : data_) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

bool Matrix::all_finite() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) {
        throw ShapeError("Matrix *: inner dimension mismatch " + shape_string(a) + " * " + shape_string(b));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

void multiply_into(const Matrix& a, const Vector& x, Vector& out)
{
    if (a.cols() != x.dim() || out.dim() != a.rows()) {
        throw ShapeError("Matrix * Vector: dimension mismatch");
    }
    const auto entries = a.entries();
    const std::size_t n = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = entries.data() + i * n;
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += row[j] * x[j];
        }
        out[i] = sum;
    }
}

Vector operator*(const Matrix& a, const Vector& x)
{
    Vector out(a.rows());
    multiply_into(a, x, out);
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b)
{
    if (!a.square() || !b.square() || a.rows() != b.rows()) {
        throw ShapeError("commutator: operands must be square and of equal size, got " + shape_string(a) +
                         " and " + shape_string(b));
    }
    return a * b - b * a;
}

Matrix solve(const Matrix& a, const Matrix& b)
{
    if (!a.square() || a.rows() != b.rows()) {
        throw ShapeError("solve: incompatible shapes " + shape_string(a) + " and " + shape_string(b));
    }
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    Matrix lu = a;
    Matrix x = b;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) {
                pivot = r;
            }
        }
        if (lu(pivot, k) == 0.0) {
            throw NumericRangeError("solve: matrix is singular");
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lu(k, c), lu(pivot, c));
            }
            for (std::size_t c = 0; c < m; ++c) {
                std::swap(x(k, c), x(pivot, c));
            }
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = lu(r, k) / lu(k, k);
            if (f == 0.0) {
                continue;
            }
            lu(r, k) = f;
            for (std::size_t c = k + 1; c < n; ++c) {
                lu(r, c) -= f * lu(k, c);
            }
            for (std::size_t c = 0; c < m; ++c) {
                x(r, c) -= f * x(k, c);
            }
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t c = 0; c < m; ++c) {
            double sum = x(k, c);
            for (std::size_t j = k + 1; j < n; ++j) {
                sum -= lu(k, j) * x(j, c);
            }
            x(k, c) = sum / lu(k, k);
        }
    }
    return x;
}

Matrix matrix_exp(const Matrix& a, double t)
{
    if (!a.square()) {
        throw ShapeError("matrix_exp: non-square input " + shape_string(a));
    }
    if (!std::isfinite(t)) {
        throw DomainError("matrix_exp: non-finite time");
    }
    const std::size_t n = a.rows();
    Matrix x = t * a;
    const double nrm = x.norm1();
    if (nrm == 0.0) {
        return Matrix::identity(n);
    }
    if (!std::isfinite(nrm) || nrm > 1e300) {
        throw NumericRangeError("matrix_exp: ||t*A|| out of range");
    }

    int squarings = 0;
    if (nrm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
        x *= std::ldexp(1.0, -squarings);
    }

    // Diagonal Pade [8/8]: c_k = (2m-k)! m! / ((2m)! k! (m-k)!), c_0 = 1.
    constexpr int degree = 8;
    std::array<double, degree + 1> coeff{};
    coeff[0] = 1.0;
    for (int k = 1; k <= degree; ++k) {
        coeff[k] = coeff[k - 1] * static_cast<double>(degree - k + 1) /
                   (static_cast<double>(k) * static_cast<double>(2 * degree - k + 1));
    }

    // Even and odd parts: N = U + V, D = U - V with U = sum c_{2j} X^{2j}, V = sum c_{2j+1} X^{2j+1}.
    const Matrix x2 = x * x;
    Matrix even = coeff[0] * Matrix::identity(n);
    Matrix odd_inner = coeff[1] * Matrix::identity(n);
    Matrix power = Matrix::identity(n);
    for (int j = 1; 2 * j <= degree; ++j) {
        power = power * x2;
        even += coeff[2 * j] * power;
        if (2 * j + 1 <= degree) {
            odd_inner += coeff[2 * j + 1] * power;
        }
    }
    const Matrix odd = x * odd_inner;
    Matrix result = solve(even - odd, even + odd);

    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    if (!result.all_finite()) {
        throw NumericRangeError("matrix_exp: result overflowed");
    }
    return result;
}

double norm(const Vector& v, NormKind kind, double dx)
{
    if (v.empty()) {
        throw DomainError("norm: empty vector");
    }
    switch (kind) {
    case NormKind::max: {
        double best = 0.0;
        for (double x : v.entries()) {
            best = std::max(best, std::abs(x));
        }
        return best;
    }
    case NormKind::l2: {
        double sum = 0.0;
        for (double x : v.entries()) {
            sum += x * x;
        }
        return std::sqrt(sum);
    }
    case NormKind::discrete_l2: {
        if (!(dx > 0.0)) {
            throw DomainError("norm: discrete-l2 requires dx > 0");
        }
        double sum = 0.0;
        for (double x : v.entries()) {
            sum += x * x;
        }
        return std::sqrt(dx * sum);
    }
    }
    return 0.0;
}

double probe_norm(const Matrix& m)
{
    return m.max_abs();
}

Matrix block_diagonal(std::initializer_list<const Matrix*> blocks)
{
    std::size_t n = 0;
    for (const Matrix* b : blocks) {
        if (!b->square()) {
            throw ShapeError("block_diagonal: blocks must be square");
        }
        n += b->rows();
    }
    Matrix out(n, n);
    std::size_t offset = 0;
    for (const Matrix* b : blocks) {
        for (std::size_t r = 0; r < b->rows(); ++r) {
            for (std::size_t c = 0; c < b->cols(); ++c) {
                out(offset + r, offset + c) = (*b)(r, c);
            }
        }
        offset += b->rows();
    }
    return out;
}

} // namespace zsplit
