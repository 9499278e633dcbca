#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnest/errors.hpp"
#include "qnest/state_vector.hpp"
#include "qnest/unitary_matrix.hpp"

namespace qnest {

/// Angle that rotates (x, y) onto (sqrt(x^2 + y^2), 0).
///
/// Computed as -atan2(y, x), which keeps the rotated pivot nonnegative in
/// every quadrant; (0, 0) maps to angle 0 by convention.
inline double givens_angle(double x, double y) {
    if (x == 0.0 && y == 0.0) return 0.0;
    const double angle = -std::atan2(y, x);
    return angle == 0.0 ? 0.0 : angle; // no negative zero
}

/// Plane rotation by `angle` radians acting on coordinates (p, q), p < q.
struct GivensRotation {
    std::size_t p;
    std::size_t q;
    double angle;

    double degrees() const { return angle * 180.0 / std::numbers::pi; }
};

/// Ordered rotation chain; the first listed rotation acts first. The induced
/// matrix is a product of plane rotations, hence orthogonal with det 1.
class RotationChain {
  public:
    RotationChain(std::size_t dimension, std::vector<GivensRotation> rotations)
        : dimension_(dimension), rotations_(std::move(rotations)) {
        if (dimension_ < 2) throw ValidationError("rotation chain: dimension must be >= 2");
        for (const auto& r : rotations_) {
            if (r.p >= r.q || r.q >= dimension_) {
                throw ValidationError("rotation chain: plane (" + std::to_string(r.p) + ", " +
                                      std::to_string(r.q) + ") invalid for dimension " +
                                      std::to_string(dimension_));
            }
        }
    }

    std::size_t dimension() const { return dimension_; }
    const std::vector<GivensRotation>& rotations() const { return rotations_; }

  private:
    std::size_t dimension_;
    std::vector<GivensRotation> rotations_;
};

namespace detail {

inline void check_unit(std::span<const double> v, const char* what) {
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (std::abs(std::sqrt(norm_sq) - 1.0) > kNormTolerance) {
        throw ValidationError(std::string(what) + ": vector is not unit (norm " +
                              std::to_string(std::sqrt(norm_sq)) + ")");
    }
}

inline void rotate_pair(std::vector<double>& v, const GivensRotation& r) {
    const double c = std::cos(r.angle);
    const double s = std::sin(r.angle);
    const double vp = v[r.p];
    const double vq = v[r.q];
    v[r.p] = c * vp - s * vq;
    v[r.q] = s * vp + c * vq;
}

} // namespace detail

/// Heap-transform chain for a unit generator: rotations on the pivot path
/// (0,1), (0,2), ..., (0,N-1), each folding the next component into
/// component 0. Zero components produce explicit zero-angle rotations, so
/// the chain always has N-1 entries. Applying the chain to the generator
/// yields e0.
inline RotationChain dsiht_chain(std::span<const double> generator) {
    if (generator.size() < 2) {
        throw ValidationError("dsiht_chain: generator must have at least 2 components");
    }
    detail::check_unit(generator, "dsiht_chain");

    std::vector<double> v(generator.begin(), generator.end());
    std::vector<GivensRotation> rotations;
    rotations.reserve(v.size() - 1);
    for (std::size_t k = 1; k < v.size(); ++k) {
        GivensRotation r{0, k, givens_angle(v[0], v[k])};
        detail::rotate_pair(v, r);
        rotations.push_back(r);
    }
    return RotationChain(generator.size(), std::move(rotations));
}

/// Applies each rotation in order; touches two components per rotation.
inline std::vector<double> apply_chain(const RotationChain& chain, std::span<const double> v) {
    if (v.size() != chain.dimension()) {
        throw ValidationError("apply_chain: vector length does not match chain dimension");
    }
    std::vector<double> out(v.begin(), v.end());
    for (const auto& r : chain.rotations()) detail::rotate_pair(out, r);
    return out;
}

/// Applies the rotations in reverse order with negated angles, undoing
/// apply_chain exactly.
inline std::vector<double> apply_chain_inverse(const RotationChain& chain,
                                               std::span<const double> v) {
    if (v.size() != chain.dimension()) {
        throw ValidationError("apply_chain_inverse: vector length does not match chain dimension");
    }
    std::vector<double> out(v.begin(), v.end());
    for (auto it = chain.rotations().rbegin(); it != chain.rotations().rend(); ++it) {
        detail::rotate_pair(out, GivensRotation{it->p, it->q, -it->angle});
    }
    return out;
}

/// Dense product of the rotation factors, first rotation rightmost.
inline UnitaryMatrix chain_matrix(const RotationChain& chain) {
    const std::size_t n = chain.dimension();
    UnitaryMatrix m = UnitaryMatrix::identity(n);
    for (const auto& r : chain.rotations()) {
        // left-multiply by the rotation: combine rows p and q
        const double c = std::cos(r.angle);
        const double s = std::sin(r.angle);
        for (std::size_t col = 0; col < n; ++col) {
            const double rp = m(r.p, col);
            const double rq = m(r.q, col);
            m(r.p, col) = c * rp - s * rq;
            m(r.q, col) = s * rp + c * rq;
        }
    }
    return m;
}

/// Dense matrix of one plane rotation; used to print chain factorizations.
inline UnitaryMatrix rotation_matrix(std::size_t dim, const GivensRotation& r) {
    UnitaryMatrix m = UnitaryMatrix::identity(dim);
    const double c = std::cos(r.angle);
    const double s = std::sin(r.angle);
    m(r.p, r.p) = c;
    m(r.p, r.q) = -s;
    m(r.q, r.p) = s;
    m(r.q, r.q) = c;
    return m;
}

/// Transfer unitary mapping unit `source` to unit `target`: the target chain
/// transposed, composed with the source chain. U * source = target.
inline UnitaryMatrix transfer_unitary(std::span<const double> source,
                                      std::span<const double> target) {
    if (source.size() != target.size()) {
        throw ValidationError("transfer_unitary: dimension mismatch");
    }
    detail::check_unit(source, "transfer_unitary source");
    detail::check_unit(target, "transfer_unitary target");
    return chain_matrix(dsiht_chain(target)).transposed() * chain_matrix(dsiht_chain(source));
}

/// 2x2 transfer between single-qubit superpositions.
inline UnitaryMatrix single_qubit_transfer(const Qubit& source, const Qubit& target) {
    const std::vector<double> s{source.a(), source.b()};
    const std::vector<double> t{target.a(), target.b()};
    return transfer_unitary(s, t);
}

} // namespace qnest
