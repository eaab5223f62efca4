#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace zsplit {

/// Dense real vector. Entries are finite on construction.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0);
    explicit Vector(std::vector<double> entries);
    Vector(std::initializer_list<double> entries);

    std::size_t dim() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    std::span<const double> entries() const noexcept { return data_; }
    std::span<double> entries() noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);
    Vector& operator*=(double s);

    /// this += s * x
    void axpy(double s, const Vector& x);

    bool operator==(const Vector&) const = default;

private:
    std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector v);

/// Dense real matrix in row-major storage. Entries are finite on construction.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t n) { return Matrix(n, n); }
    static Matrix diagonal(std::span<const double> diag);
    static Matrix diagonal(std::initializer_list<double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> entries() const noexcept { return data_; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    Matrix transposed() const;

    /// Maximum absolute column sum.
    double norm1() const noexcept;
    /// Maximum absolute row sum.
    double norm_inf() const noexcept;
    /// Largest absolute entry.
    double max_abs() const noexcept;

    bool all_finite() const noexcept;
    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// Writes a*x into out without allocating. out must already have a.rows() entries.
void multiply_into(const Matrix& a, const Vector& x, Vector& out);

/// [a, b] = ab - ba.
Matrix commutator(const Matrix& a, const Matrix& b);

/// exp(t*a) by scaling and squaring with a diagonal [8/8] Pade approximant.
///
/// The scaling exponent is chosen so that ||t*a / 2^s||_1 <= 0.5. Throws
/// ShapeError for non-square input and NumericRangeError when the result
/// overflows.
Matrix matrix_exp(const Matrix& a, double t = 1.0);

/// Solves a*X = b for X by LU with partial pivoting.
Matrix solve(const Matrix& a, const Matrix& b);

enum class NormKind { max, l2, discrete_l2 };

/// Vector norm. dx is only used by NormKind::discrete_l2: sqrt(dx * sum v_i^2).
double norm(const Vector& v, NormKind kind, double dx = 1.0);

/// Max over the unit basis vectors e_j of ||m e_j||_max, i.e. the largest absolute entry.
/// Used for operator-error statements so fits are reproducible.
double probe_norm(const Matrix& m);

/// Block-diagonal assembly of square blocks.
Matrix block_diagonal(std::initializer_list<const Matrix*> blocks);

} // namespace zsplit
