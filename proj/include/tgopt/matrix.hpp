#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tgopt/errors.hpp"

namespace tgopt {

using Complex = std::complex<double>;
using EigenMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Dense complex matrix, the carrier for every operator in the library
/// (A, P, R, M, X, E, B). Constructors reject non-finite entries.
class Matrix {
public:
    Matrix() = default;

    /// Zero matrix of the given shape.
    Matrix(Index rows, Index cols);

    /// Wraps an Eigen matrix, validating that all entries are finite.
    explicit Matrix(EigenMatrix data);

    static Matrix identity(Index n);
    static Matrix zero(Index rows, Index cols);
    static Matrix diag(std::span<const double> values);
    static Matrix diag(std::span<const Complex> values);
    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    Index rows() const { return data_.rows(); }
    Index cols() const { return data_.cols(); }
    bool is_square() const { return rows() == cols(); }
    bool empty() const { return data_.size() == 0; }

    Complex operator()(Index i, Index j) const { return data_(i, j); }
    Complex& operator()(Index i, Index j) { return data_(i, j); }

    const EigenMatrix& eigen() const { return data_; }
    EigenMatrix& eigen() { return data_; }

    Matrix adjoint() const { return Matrix(data_.adjoint().eval()); }
    Matrix transpose() const { return Matrix(data_.transpose().eval()); }
    Matrix conjugate() const { return Matrix(data_.conjugate().eval()); }

    /// (m + m^H)/2; requires a square matrix.
    Matrix hermitian_part() const;

    /// Columns [first, first + count).
    Matrix columns(Index first, Index count) const;

    double max_abs() const { return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff(); }
    double frobenius_norm() const { return data_.norm(); }

    /// ||m - m^H||_max <= rel_tol * ||m||_max. The zero matrix is Hermitian.
    bool is_hermitian(double rel_tol = 1e-12) const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);

private:
    EigenMatrix data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex scalar, const Matrix& m);
Matrix operator*(const Matrix& m, Complex scalar);
Matrix operator*(double scalar, const Matrix& m);
Matrix operator*(const Matrix& m, double scalar);

/// Largest absolute entrywise difference; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

void require_square(const Matrix& m, const char* who);
void require_same_shape(const Matrix& a, const Matrix& b, const char* who);

} // namespace tgopt
