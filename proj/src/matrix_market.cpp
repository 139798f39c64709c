#include "tgopt/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace tgopt::mm {

namespace {

enum class Layout { Array, Coordinate };
enum class Field { Real, Integer, Complex };
enum class Symmetry { General, Symmetric, Hermitian };

struct Header {
    Layout layout;
    Field field;
    Symmetry symmetry;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Header parse_header(const std::string& line) {
    std::istringstream is(line);
    std::string banner, object, layout, field, symmetry;
    if (!(is >> banner >> object >> layout >> field >> symmetry))
        throw ParseError("matrix market: incomplete header", 1);
    if (banner != "%%MatrixMarket")
        throw ParseError("matrix market: missing %%MatrixMarket banner", 1);
    if (lower(object) != "matrix")
        throw ParseError("matrix market: object must be 'matrix'", 1);

    Header h{};
    const std::string l = lower(layout);
    if (l == "array")
        h.layout = Layout::Array;
    else if (l == "coordinate")
        h.layout = Layout::Coordinate;
    else
        throw ParseError("matrix market: unknown layout '" + layout + "'", 1);

    const std::string f = lower(field);
    if (f == "real")
        h.field = Field::Real;
    else if (f == "integer")
        h.field = Field::Integer;
    else if (f == "complex")
        h.field = Field::Complex;
    else
        throw ParseError("matrix market: unsupported field '" + field + "'", 1);

    const std::string s = lower(symmetry);
    if (s == "general")
        h.symmetry = Symmetry::General;
    else if (s == "symmetric")
        h.symmetry = Symmetry::Symmetric;
    else if (s == "hermitian")
        h.symmetry = Symmetry::Hermitian;
    else
        throw ParseError("matrix market: unsupported symmetry '" + symmetry + "'", 1);
    return h;
}

Complex parse_value(std::istringstream& is, Field field, long line_no) {
    double re = 0.0, im = 0.0;
    if (!(is >> re))
        throw ParseError("matrix market: missing value", line_no);
    if (field == Field::Complex && !(is >> im))
        throw ParseError("matrix market: missing imaginary part", line_no);
    return {re, im};
}

void place(EigenMatrix& m, Index i, Index j, Complex v, Symmetry sym, long line_no) {
    if (i < 0 || i >= m.rows() || j < 0 || j >= m.cols())
        throw ParseError("matrix market: index out of bounds", line_no);
    m(i, j) = v;
    if (i != j) {
        if (sym == Symmetry::Symmetric)
            m(j, i) = v;
        else if (sym == Symmetry::Hermitian)
            m(j, i) = std::conj(v);
    }
}

} // namespace

Matrix load_matrix_market(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw IoError("matrix market: cannot open '" + path + "'");

    std::string line;
    long line_no = 0;

    if (!std::getline(file, line))
        throw ParseError("matrix market: empty file", 1);
    line_no = 1;
    const Header header = parse_header(line);

    // Skip comments and blank lines up to the size line.
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line[0] != '%' &&
            line.find_first_not_of(" \t\r") != std::string::npos)
            break;
    }
    if (!file)
        throw ParseError("matrix market: missing size line", line_no);

    std::istringstream size_line(line);
    Index rows = 0, cols = 0;
    long nnz = 0;
    if (!(size_line >> rows >> cols))
        throw ParseError("matrix market: malformed size line", line_no);
    if (header.layout == Layout::Coordinate && !(size_line >> nnz))
        throw ParseError("matrix market: coordinate size line needs an entry count", line_no);
    if (rows <= 0 || cols <= 0)
        throw ParseError("matrix market: non-positive dimensions", line_no);
    if (header.symmetry != Symmetry::General && rows != cols)
        throw ParseError("matrix market: symmetric storage requires a square matrix", line_no);

    EigenMatrix m = EigenMatrix::Zero(rows, cols);

    if (header.layout == Layout::Array) {
        // Array data is column-major; symmetric/hermitian files store only
        // the lower triangle of each column.
        for (Index j = 0; j < cols; ++j) {
            const Index i_start = header.symmetry == Symmetry::General ? 0 : j;
            for (Index i = i_start; i < rows; ++i) {
                if (!std::getline(file, line))
                    throw ParseError("matrix market: unexpected end of data", line_no + 1);
                ++line_no;
                std::istringstream is(line);
                place(m, i, j, parse_value(is, header.field, line_no), header.symmetry,
                      line_no);
            }
        }
    } else {
        for (long k = 0; k < nnz; ++k) {
            if (!std::getline(file, line))
                throw ParseError("matrix market: unexpected end of data", line_no + 1);
            ++line_no;
            std::istringstream is(line);
            Index i = 0, j = 0;
            if (!(is >> i >> j))
                throw ParseError("matrix market: malformed coordinate entry", line_no);
            place(m, i - 1, j - 1, parse_value(is, header.field, line_no), header.symmetry,
                  line_no);
        }
    }

    return Matrix(std::move(m));
}

void save_matrix_market(const Matrix& m, const std::string& path) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidDimension("matrix market: refusing to write an empty matrix");
    std::ofstream file(path);
    if (!file)
        throw IoError("matrix market: cannot open '" + path + "' for writing");
    file << "%%MatrixMarket matrix array complex general\n";
    file << m.rows() << " " << m.cols() << "\n";
    file << std::setprecision(17);
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            file << m(i, j).real() << " " << m(i, j).imag() << "\n";
    if (!file)
        throw IoError("matrix market: write to '" + path + "' failed");
}

} // namespace tgopt::mm
