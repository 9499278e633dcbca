#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qnest/errors.hpp"

namespace qnest {

/// Per-entry tolerance for the U'U = I unitarity check.
inline constexpr double kUnitarityTolerance = 1e-10;

/// Dense square real matrix, row-major. Used for chain products, gate
/// oracles and file exports; unitarity is checked at the points of use,
/// not at construction (printed low-precision fixtures are also stored
/// in this type).
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}

    static UnitaryMatrix identity(std::size_t dim) {
        UnitaryMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static UnitaryMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        const std::size_t n = rows.size();
        if (n == 0) throw ValidationError("matrix: empty row list");
        UnitaryMatrix m(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (rows[r].size() != n) {
                throw ValidationError("matrix: row " + std::to_string(r) + " has " +
                                      std::to_string(rows[r].size()) + " entries, expected " +
                                      std::to_string(n));
            }
            for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

    std::vector<double> apply(std::span<const double> v) const {
        if (v.size() != dim_) {
            throw ValidationError("matrix apply: vector length " + std::to_string(v.size()) +
                                  " does not match dimension " + std::to_string(dim_));
        }
        std::vector<double> out(dim_, 0.0);
        for (std::size_t r = 0; r < dim_; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
            out[r] = s;
        }
        return out;
    }

    UnitaryMatrix transposed() const {
        UnitaryMatrix t(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Determinant by LU factorization with partial pivoting.
    double determinant() const {
        std::vector<double> a(entries_);
        const std::size_t n = dim_;
        double det = 1.0;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < n; ++r) {
                if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
            }
            if (a[pivot * n + col] == 0.0) return 0.0;
            if (pivot != col) {
                for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
                det = -det;
            }
            det *= a[col * n + col];
            for (std::size_t r = col + 1; r < n; ++r) {
                const double f = a[r * n + col] / a[col * n + col];
                for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            }
        }
        return det;
    }

    /// max |(U'U)_{rc} - I_{rc}| over all entries.
    double max_unitarity_error() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < dim_; ++k) s += (*this)(k, r) * (*this)(k, c);
                worst = std::max(worst, std::abs(s - (r == c ? 1.0 : 0.0)));
            }
        }
        return worst;
    }

    bool is_unitary(double tol = kUnitarityTolerance) const {
        return max_unitarity_error() <= tol;
    }

  private:
    std::size_t dim_;
    std::vector<double> entries_;
};

inline UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("matrix product: dimension mismatch");
    const std::size_t n = a.dim();
    UnitaryMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const double av = a(r, k);
            if (av == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += av * b(k, c);
        }
    }
    return out;
}

/// Block-diagonal stacking: diag(a, b).
inline UnitaryMatrix direct_sum(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    UnitaryMatrix out(a.dim() + b.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t c = 0; c < b.dim(); ++c) out(a.dim() + r, a.dim() + c) = b(r, c);
    return out;
}

inline double max_abs_difference(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("matrix difference: dimension mismatch");
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

} // namespace qnest
