#pragma once

#include "dyncomp/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dyncomp {

enum class SystemKind { Rotation, Torus, Odometer };

// One of the supported minimal, uniquely ergodic systems:
//   Rotation  x -> x + theta mod 1 on the circle [0,1)
//   Torus     coordinatewise rotation by thetas[i]
//   Odometer  adding machine on digit words truncated at `level` digits;
//             level-n cylinders are indexed by sum x_i * (k_1 ... k_{i-1}),
//             so the map acts on indices as +1 mod K.
class System {
public:
    static System rotation(const Scalar& theta);
    static System torus(const std::vector<Scalar>& thetas);
    static System odometer(const std::vector<long>& bases, long level = -1);

    SystemKind kind() const { return kind_; }
    bool is_rotation() const { return kind_ == SystemKind::Rotation; }
    bool is_torus() const { return kind_ == SystemKind::Torus; }
    bool is_odometer() const { return kind_ == SystemKind::Odometer; }

    const Scalar& theta() const { return thetas_.at(0); }
    const std::vector<Scalar>& thetas() const { return thetas_; }
    int dim() const { return static_cast<int>(thetas_.size()); }
    long D() const { return thetas_.empty() ? 0 : thetas_[0].D(); }

    const std::vector<long>& bases() const { return bases_; }
    long level() const { return level_; }
    std::int64_t K() const { return K_; }
    // k_1 ... k_l for l <= level.
    std::int64_t K_at(long l) const;

    // Text of the system block of a spec file.
    std::string echo() const;

    friend bool operator==(const System& x, const System& y);

private:
    SystemKind kind_ = SystemKind::Rotation;
    std::vector<Scalar> thetas_;
    std::vector<long> bases_;
    long level_ = 0;
    std::int64_t K_ = 0;
};

struct Point {
    std::vector<Scalar> coords;  // rotations: reduced mod 1
    std::int64_t index = 0;      // odometer: level-n cylinder index

    static Point circle(const Scalar& x) { return Point{{x.frac()}, 0}; }
    static Point cylinder(std::int64_t i) { return Point{{}, i}; }
    friend bool operator==(const Point& x, const Point& y) = default;
};

// h^n(point).
Point apply(const System& sys, const Point& p, long n);

// Digit word (first digit least significant) <-> cylinder index.
std::vector<int> odometer_word(const System& sys, std::int64_t index);
std::int64_t odometer_index(const System& sys, const std::vector<int>& digits);
// Parses a word such as "101" (one character per digit, bases <= 10).
std::int64_t odometer_index(const System& sys, const std::string& word);

// Circle distance ||x|| = min(frac x, 1 - frac x).
Scalar circle_norm(const Scalar& x);

// Rotations: min over 1 <= j <= N of ||j theta|| (sup-norm on tori).
// Odometer: 1/K_l for the smallest level l with K_l > N.
Scalar min_orbit_gap(const System& sys, long N);

}  // namespace dyncomp
