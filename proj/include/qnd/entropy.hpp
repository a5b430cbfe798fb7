#pragma once

// Binary entropy, its inverse on [0, 1], and conditional Shannon entropy of
// finite joint tables. All entropies are in bits and 0 log 0 is taken as 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnd/errors.hpp"

namespace qnd {

/// Slack allowed on the domain boundaries of h and g before raising DomainError.
/// Values inside the slack are clamped onto the boundary.
inline constexpr double kDomainSlack = 1e-12;

/// Binary entropy of a +-1 variable with bias x:
///   h(x) = -(1+x)/2 log2((1+x)/2) - (1-x)/2 log2((1-x)/2).
/// Even in x, h(0) = 1, h(+-1) = 0.
inline double binary_entropy(double x) {
    if (!(std::abs(x) <= 1.0 + kDomainSlack)) {
        throw DomainError("binary_entropy: |x| must be <= 1, got " + std::to_string(x));
    }
    const double t = std::min(std::abs(x), 1.0);
    const double q = 0.5 * (1.0 - t);  // smaller of the two probabilities
    if (q == 0.0) return 0.0;
    const double p = 0.5 * (1.0 + t);
    // log(p) = log1p(-q) keeps accuracy when q is tiny.
    return -(p * std::log1p(-q) + q * std::log(q)) / std::numbers::ln2;
}

/// h'(x) = (1/2) log2((1-x)/(1+x)) = -atanh(x) / ln 2, for |x| < 1.
inline double binary_entropy_derivative(double x) {
    if (!(std::abs(x) < 1.0)) {
        throw DomainError("binary_entropy_derivative: requires |x| < 1, got " + std::to_string(x));
    }
    return -std::atanh(x) / std::numbers::ln2;
}

/// Inverse of h restricted to [0, 1]: the unique x in [0, 1] with h(x) = y.
/// Bisection on x until the bracket stops shrinking (at most 200 halvings),
/// which leaves |h(x) - y| well below 1e-12.
inline double inverse_binary_entropy(double y) {
    if (!(y >= -kDomainSlack && y <= 1.0 + kDomainSlack)) {
        throw DomainError("inverse_binary_entropy: y must lie in [0, 1], got " + std::to_string(y));
    }
    if (y <= 0.0) return 1.0;
    if (y >= 1.0) return 0.0;
    double lo = 0.0;  // h(lo) = 1 > y
    double hi = 1.0;  // h(hi) = 0 < y
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (binary_entropy(mid) > y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Pick the bracket end whose entropy is closer to the target.
    return std::abs(binary_entropy(lo) - y) <= std::abs(binary_entropy(hi) - y) ? lo : hi;
}

/// Which variable of a JointTable is conditioned on.
enum class Given { rows, cols };

/// Joint distribution p(x, y) over finite label sets, stored row-major
/// (rows indexed by x, columns by y).
class JointTable {
public:
    static constexpr double kSumTolerance = 1e-9;

    JointTable(std::vector<int> labels_x, std::vector<int> labels_y, std::vector<double> p)
        : labels_x_(std::move(labels_x)), labels_y_(std::move(labels_y)), p_(std::move(p)) {
        if (labels_x_.empty() || labels_y_.empty()) throw ValidationError("JointTable: empty label set");
        if (p_.size() != labels_x_.size() * labels_y_.size()) {
            throw ValidationError("JointTable: probability count does not match label sets");
        }
        double total = 0.0;
        for (double v : p_) {
            if (!(v >= 0.0)) throw ValidationError("JointTable: negative or NaN entry " + std::to_string(v));
            total += v;
        }
        if (std::abs(total - 1.0) > kSumTolerance) {
            throw ValidationError("JointTable: entries sum to " + std::to_string(total) + ", expected 1");
        }
    }

    /// p(x, y) = prior(x) * channel(y | x); channel is rows(x) x cols(y).
    static JointTable from_channel(std::vector<int> labels_x, std::vector<int> labels_y, std::span<const double> prior,
                                   std::span<const double> channel) {
        const std::size_t nx = labels_x.size();
        const std::size_t ny = labels_y.size();
        if (prior.size() != nx || channel.size() != nx * ny) {
            throw ValidationError("JointTable::from_channel: shape mismatch");
        }
        std::vector<double> p(nx * ny);
        for (std::size_t i = 0; i < nx; ++i) {
            for (std::size_t j = 0; j < ny; ++j) p[i * ny + j] = prior[i] * channel[i * ny + j];
        }
        return {std::move(labels_x), std::move(labels_y), std::move(p)};
    }

    std::size_t rows() const noexcept { return labels_x_.size(); }
    std::size_t cols() const noexcept { return labels_y_.size(); }
    const std::vector<int>& labels_x() const noexcept { return labels_x_; }
    const std::vector<int>& labels_y() const noexcept { return labels_y_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return p_[i * cols() + j]; }
    std::span<const double> values() const noexcept { return p_; }

    std::vector<double> marginal(Given axis) const {
        std::vector<double> m(axis == Given::rows ? rows() : cols(), 0.0);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) m[axis == Given::rows ? i : j] += (*this)(i, j);
        }
        return m;
    }

    /// Same table with rows and columns exchanged.
    JointTable transposed() const {
        std::vector<double> t(p_.size());
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t j = 0; j < cols(); ++j) t[j * rows() + i] = (*this)(i, j);
        }
        return {labels_y_, labels_x_, std::move(t)};
    }

private:
    std::vector<int> labels_x_;
    std::vector<int> labels_y_;
    std::vector<double> p_;
};

/// H(X|Y) (given = cols) or H(Y|X) (given = rows) in bits:
///   -sum p(x,y) log2 p(x|y).
/// Zero cells contribute nothing; conditioning values with zero marginal are skipped.
inline double conditional_entropy(const JointTable& joint, Given given) {
    const std::vector<double> cond = joint.marginal(given);
    double h = 0.0;
    for (std::size_t i = 0; i < joint.rows(); ++i) {
        for (std::size_t j = 0; j < joint.cols(); ++j) {
            const double pxy = joint(i, j);
            const double pc = cond[given == Given::rows ? i : j];
            if (pxy <= 0.0 || pc <= 0.0) continue;
            h -= pxy * std::log2(pxy / pc);
        }
    }
    return std::max(h, 0.0);
}

}  // namespace qnd
