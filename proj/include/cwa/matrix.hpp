#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwa {

// Arbitrary-precision integer used for every matrix entry. Intermediate
// values in Smith reduction can grow far past 64 bits even on small inputs.
using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense integer matrix, row-major. Shapes with zero rows or columns are
/// legal and common (boundary maps of empty degrees keep their shape).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error("ragged matrix literal");
            for (long long v : r) a_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) {
        check(i, j);
        return a_[i * cols_ + j];
    }
    const Int& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return a_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const Int& v : a_)
            if (v != 0) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& v = a_[i * cols_ + k];
                if (v == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (Int& v : r.a_) v = -v;
        return r;
    }

    bool operator==(const Matrix& o) const = default;

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }
    // row i += k * row j
    void add_row(std::size_t i, std::size_t j, const Int& k) {
        for (std::size_t c = 0; c < cols_; ++c) at(i, c) += k * at(j, c);
    }
    void add_col(std::size_t i, std::size_t j, const Int& k) {
        for (std::size_t r = 0; r < rows_; ++r) at(r, i) += k * at(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw Error("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

// Text form shared by the document format: row-major signed decimal
// integers, one row per line.
inline void write_matrix(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m.at(i, j);
        }
        os << '\n';
    }
}

inline std::string matrix_to_text(const Matrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

inline Matrix read_matrix(std::istream& is, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::string tok;
            if (!(is >> tok)) throw Error("matrix text ended early");
            try {
                m.at(i, j) = Int(tok);
            } catch (const std::exception&) {
                throw Error("bad integer token '" + tok + "'");
            }
        }
    return m;
}

}  // namespace cwa
