#pragma once

// Qubit states, spin observables and measure-and-prepare instruments, all in
// the Bloch representation. Every quantity used downstream is a function of
// inner products of real 3-vectors, so no spinor phase convention is needed.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "qnd/errors.hpp"

namespace qnd {

/// Tolerance on |r| = 1 for pure states and unit axes.
inline constexpr double kUnitTolerance = 1e-12;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double dot(const BlochVector& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
    double norm() const noexcept { return std::sqrt(dot(*this)); }

    constexpr BlochVector operator-() const noexcept { return {-x, -y, -z}; }
    constexpr BlochVector operator+(const BlochVector& o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
    constexpr BlochVector operator-(const BlochVector& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
    constexpr BlochVector operator*(double s) const noexcept { return {x * s, y * s, z * s}; }
    constexpr bool operator==(const BlochVector&) const = default;

    bool is_unit(double tol = kUnitTolerance) const noexcept { return std::abs(norm() - 1.0) <= tol; }
    /// Physical (possibly mixed) state: inside the closed unit ball.
    bool is_physical(double tol = kUnitTolerance) const noexcept { return norm() <= 1.0 + tol; }

    std::string str() const {
        std::ostringstream os;
        os.precision(17);
        os << '(' << x << ", " << y << ", " << z << ')';
        return os.str();
    }
};

inline constexpr BlochVector kAxisX{1.0, 0.0, 0.0};
inline constexpr BlochVector kAxisY{0.0, 1.0, 0.0};
inline constexpr BlochVector kAxisZ{0.0, 0.0, 1.0};

/// Unit axis (0, sin theta, cos theta) in the y-z plane, theta measured from +z.
inline BlochVector yz_axis(double theta) noexcept { return {0.0, std::sin(theta), std::cos(theta)}; }

/// Outcome of a two-valued spin measurement.
enum class Outcome : int { plus = +1, minus = -1 };

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::plus, Outcome::minus};

constexpr double sign(Outcome o) noexcept { return o == Outcome::plus ? 1.0 : -1.0; }
constexpr int label(Outcome o) noexcept { return static_cast<int>(o); }
/// Array slot: plus -> 0, minus -> 1.
constexpr std::size_t slot(Outcome o) noexcept { return o == Outcome::plus ? 0 : 1; }
constexpr Outcome flip(Outcome o) noexcept { return o == Outcome::plus ? Outcome::minus : Outcome::plus; }

inline Outcome outcome_from_label(int v) {
    if (v == 1) return Outcome::plus;
    if (v == -1) return Outcome::minus;
    throw ValidationError("outcome label must be +1 or -1, got " + std::to_string(v));
}

class PureState {
public:
    /// Throws ValidationError unless |direction| = 1 within kUnitTolerance.
    static PureState from_direction(const BlochVector& direction) {
        if (!direction.is_unit()) {
            throw ValidationError("pure state needs a unit Bloch vector, got " + direction.str());
        }
        return PureState(direction);
    }

    /// cos(vartheta/2)|+z> + e^{i phi} sin(vartheta/2)|-z>, i.e. direction
    /// (sin vartheta cos phi, sin vartheta sin phi, cos vartheta).
    static PureState from_angles(double vartheta, double phi) noexcept {
        return PureState({std::sin(vartheta) * std::cos(phi), std::sin(vartheta) * std::sin(phi), std::cos(vartheta)});
    }

    const BlochVector& direction() const noexcept { return direction_; }

    /// Polar and azimuthal angles (vartheta in [0, pi], phi in (-pi, pi]).
    std::pair<double, double> angles() const noexcept {
        const double vartheta = std::acos(std::clamp(direction_.z, -1.0, 1.0));
        const double phi = std::atan2(direction_.y, direction_.x);
        return {vartheta, phi};
    }

    /// The orthogonal state; for psi(vartheta, phi) this is psi(pi - vartheta, phi + pi).
    PureState orthogonal() const noexcept { return PureState(-direction_); }

    bool operator==(const PureState&) const = default;

private:
    explicit PureState(const BlochVector& d) noexcept : direction_(d) {}
    BlochVector direction_;
};

/// Two-valued spin observable n.sigma with eigenvalues +1 and -1.
class Observable {
public:
    /// Rejects non-unit (including degenerate) axes instead of normalizing.
    explicit Observable(const BlochVector& axis) : axis_(axis) {
        if (!axis.is_unit()) {
            throw ValidationError("observable axis must be unit-norm, got " + axis.str());
        }
    }

    static Observable sigma_x() { return Observable(kAxisX); }
    static Observable sigma_y() { return Observable(kAxisY); }
    static Observable sigma_z() { return Observable(kAxisZ); }
    /// M = sigma_y sin(theta) + sigma_z cos(theta).
    static Observable yz_plane(double theta) { return Observable(yz_axis(theta)); }

    const BlochVector& axis() const noexcept { return axis_; }

    PureState eigenstate(Outcome o) const { return PureState::from_direction(axis_ * sign(o)); }

private:
    BlochVector axis_;
};

inline std::pair<PureState, PureState> eigenstates(const Observable& obs) {
    return {obs.eigenstate(Outcome::plus), obs.eigenstate(Outcome::minus)};
}

/// Probability of `outcome` when measuring `obs` on a state with Bloch vector r
/// (pure or mixed): (1 + outcome * r.axis) / 2, clamped to [0, 1].
inline double born_probability(const BlochVector& r, const Observable& obs, Outcome outcome) noexcept {
    const double p = 0.5 * (1.0 + sign(outcome) * r.dot(obs.axis()));
    return std::clamp(p, 0.0, 1.0);
}

inline double born_probability(const PureState& state, const Observable& obs, Outcome outcome) noexcept {
    return born_probability(state.direction(), obs, outcome);
}

/// Outcome-conditioned re-preparation: after outcome mu the system leaves in target(mu).
class CorrectionMap {
public:
    CorrectionMap(PureState target_plus, PureState target_minus) noexcept
        : plus_(std::move(target_plus)), minus_(std::move(target_minus)) {}

    /// No correction: outcome mu leaves the eigenstate |mu m> of the measured observable.
    static CorrectionMap identity(const Observable& measured) {
        return {measured.eigenstate(Outcome::plus), measured.eigenstate(Outcome::minus)};
    }

    /// |+m> -> psi(vartheta, phi), |-m> -> psi(pi - vartheta, phi + pi).
    static CorrectionMap rotated(double vartheta, double phi) noexcept {
        return {PureState::from_angles(vartheta, phi), PureState::from_angles(std::numbers::pi - vartheta, phi + std::numbers::pi)};
    }

    const PureState& target(Outcome o) const noexcept { return o == Outcome::plus ? plus_ : minus_; }
    const PureState& target_plus() const noexcept { return plus_; }
    const PureState& target_minus() const noexcept { return minus_; }

private:
    PureState plus_;
    PureState minus_;
};

/// Sharp (rank-one) measurement of an observable followed by a re-preparation.
class ProjectiveInstrument {
public:
    explicit ProjectiveInstrument(Observable measured)
        : measured_(measured), post_map_(CorrectionMap::identity(measured)) {}
    ProjectiveInstrument(Observable measured, CorrectionMap post_map) noexcept
        : measured_(measured), post_map_(std::move(post_map)) {}

    const Observable& measured() const noexcept { return measured_; }
    const CorrectionMap& post_map() const noexcept { return post_map_; }

    ProjectiveInstrument with_post_map(CorrectionMap post_map) const noexcept { return {measured_, std::move(post_map)}; }

private:
    Observable measured_;
    CorrectionMap post_map_;
};

struct InstrumentBranch {
    double probability;
    PureState output;
};

inline InstrumentBranch apply_instrument(const PureState& state, const ProjectiveInstrument& inst, Outcome outcome) {
    return {born_probability(state, inst.measured(), outcome), inst.post_map().target(outcome)};
}

}  // namespace qnd
