#include "snu/transforms.hpp"

#include <sstream>

namespace snu {

Transform Transform::from_name(const std::string& name) {
    if (name == "identity") return identity();
    if (name == "square") return square();
    if (name == "cube") return cube();
    if (name == "centered-square" || name == "hermite2") return centered_square();
    if (name.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(name.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                coeffs.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad polynomial coefficient: " + tok);
            }
        }
        if (coeffs.empty())
            throw std::invalid_argument("empty polynomial: " + name);
        return polynomial(std::move(coeffs));
    }
    throw std::invalid_argument("unknown transform: " + name);
}

std::string Transform::name() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::Square: return "square";
        case Kind::Cube: return "cube";
        case Kind::CenteredSquare: return "centered-square";
        case Kind::Polynomial: {
            std::ostringstream os;
            os << "poly:";
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (i) os << ',';
                os << coeffs_[i];
            }
            return os.str();
        }
    }
    return "identity";
}

}  // namespace snu
