#include "tgopt/matrix.hpp"

#include <string>
#include <utility>

namespace tgopt {

namespace {

void check_finite(const EigenMatrix& m) {
    if (!m.allFinite())
        throw NonFiniteEntry("matrix contains NaN or Inf entries");
}

} // namespace

Matrix::Matrix(Index rows, Index cols) {
    if (rows < 0 || cols < 0)
        throw InvalidDimension("matrix dimensions must be non-negative");
    data_ = EigenMatrix::Zero(rows, cols);
}

Matrix::Matrix(EigenMatrix data) : data_(std::move(data)) {
    check_finite(data_);
}

Matrix Matrix::identity(Index n) {
    return Matrix(EigenMatrix::Identity(n, n));
}

Matrix Matrix::zero(Index rows, Index cols) {
    return Matrix(rows, cols);
}

Matrix Matrix::diag(std::span<const double> values) {
    EigenMatrix m = EigenMatrix::Zero(values.size(), values.size());
    for (Index i = 0; i < static_cast<Index>(values.size()); ++i)
        m(i, i) = values[i];
    return Matrix(std::move(m));
}

Matrix Matrix::diag(std::span<const Complex> values) {
    EigenMatrix m = EigenMatrix::Zero(values.size(), values.size());
    for (Index i = 0; i < static_cast<Index>(values.size()); ++i)
        m(i, i) = values[i];
    return Matrix(std::move(m));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const Index n_rows = static_cast<Index>(rows.size());
    if (n_rows == 0)
        throw InvalidDimension("from_rows: empty row list");
    const Index n_cols = static_cast<Index>(rows.begin()->size());
    EigenMatrix m(n_rows, n_cols);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != n_cols)
            throw DimensionMismatch("from_rows: ragged row lengths");
        Index j = 0;
        for (Complex v : row)
            m(i, j++) = v;
        ++i;
    }
    return Matrix(std::move(m));
}

Matrix Matrix::hermitian_part() const {
    require_square(*this, "hermitian_part");
    return Matrix(((data_ + data_.adjoint()) / 2.0).eval());
}

Matrix Matrix::columns(Index first, Index count) const {
    if (first < 0 || count < 0 || first + count > cols())
        throw DimensionMismatch("columns: range out of bounds");
    return Matrix(data_.middleCols(first, count).eval());
}

bool Matrix::is_hermitian(double rel_tol) const {
    if (!is_square())
        return false;
    const double scale = max_abs();
    const double dev = (data_ - data_.adjoint().eval()).cwiseAbs().maxCoeff();
    return dev <= rel_tol * scale;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "operator+=");
    data_ += rhs.data_;
    check_finite(data_);
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "operator-=");
    data_ -= rhs.data_;
    check_finite(data_);
    return *this;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator+");
    return Matrix((a.eigen() + b.eigen()).eval());
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator-");
    return Matrix((a.eigen() - b.eigen()).eval());
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("operator*: inner dimensions disagree (" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
    return Matrix((a.eigen() * b.eigen()).eval());
}

Matrix operator*(Complex scalar, const Matrix& m) {
    return Matrix((scalar * m.eigen()).eval());
}

Matrix operator*(const Matrix& m, Complex scalar) { return scalar * m; }
Matrix operator*(double scalar, const Matrix& m) { return Complex(scalar, 0.0) * m; }
Matrix operator*(const Matrix& m, double scalar) { return Complex(scalar, 0.0) * m; }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    if (a.eigen().size() == 0)
        return 0.0;
    return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

void require_square(const Matrix& m, const char* who) {
    if (!m.is_square())
        throw DimensionMismatch(std::string(who) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(who) + ": shapes disagree");
}

} // namespace tgopt
