#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace snu {

enum class Parity { Odd, Even, None };

// Real transform g applied to the underlying variable. Built-ins cover the
// registry (identity, square, cube, centered-square) plus arbitrary
// polynomials given by their coefficient list (c0 + c1 x + c2 x^2 + ...).
class Transform {
public:
    enum class Kind { Identity, Square, Cube, CenteredSquare, Polynomial };

    Transform() : kind_(Kind::Identity) {}

    static Transform identity() { return Transform(Kind::Identity); }
    static Transform square() { return Transform(Kind::Square); }
    static Transform cube() { return Transform(Kind::Cube); }
    static Transform centered_square() { return Transform(Kind::CenteredSquare); }
    static Transform polynomial(std::vector<double> coeffs) {
        Transform t(Kind::Polynomial);
        t.coeffs_ = std::move(coeffs);
        return t;
    }

    // Parse a registry name: "identity", "square", "cube", "centered-square"
    // (alias "hermite2"), or "poly:c0,c1,...".
    static Transform from_name(const std::string& name);

    double operator()(double x) const {
        switch (kind_) {
            case Kind::Identity: return x;
            case Kind::Square: return x * x;
            case Kind::Cube: return x * x * x;
            case Kind::CenteredSquare: return (x * x - 1.0) * kInvSqrt2;
            case Kind::Polynomial: {
                double acc = 0.0;
                for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
                    acc = acc * x + *it;
                return acc;
            }
        }
        return x;
    }

    Parity parity() const {
        switch (kind_) {
            case Kind::Identity:
            case Kind::Cube: return Parity::Odd;
            case Kind::Square:
            case Kind::CenteredSquare: return Parity::Even;
            case Kind::Polynomial: {
                bool odd = true, even = true;
                for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                    if (coeffs_[i] == 0.0) continue;
                    if (i % 2 == 0) odd = false;
                    else even = false;
                }
                if (odd && !even) return Parity::Odd;
                if (even && !odd) return Parity::Even;
                if (odd && even) return Parity::Odd;  // zero polynomial
                return Parity::None;
            }
        }
        return Parity::None;
    }

    Kind kind() const { return kind_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    std::string name() const;

    bool operator==(const Transform& o) const {
        return kind_ == o.kind_ && coeffs_ == o.coeffs_;
    }

private:
    explicit Transform(Kind k) : kind_(k) {}
    static constexpr double kInvSqrt2 = 0.70710678118654752440;

    Kind kind_;
    std::vector<double> coeffs_;
};

}  // namespace snu
