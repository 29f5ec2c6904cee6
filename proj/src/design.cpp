#include "leodesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leodesign/constants.hpp"

namespace leodesign {

int DesignVector::planes() const { return static_cast<int>(std::lround(genes[kPlanes])); }

int DesignVector::sats_per_plane() const {
    return static_cast<int>(std::lround(genes[kSatsPerPlane]));
}

DesignVector DesignVector::rounded() const {
    DesignVector out = *this;
    out.genes[kPlanes] = static_cast<double>(planes());
    out.genes[kSatsPerPlane] = static_cast<double>(sats_per_plane());
    return out;
}

void DesignBounds::validate() const {
    for (std::size_t i = 0; i < DesignVector::kGenes; ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw ParameterError("bounds: gene " + std::to_string(i) + " is not finite");
        if (lower[i] > upper[i])
            throw ParameterError("bounds: inverted bounds on gene " + std::to_string(i));
    }
}

bool DesignBounds::contains(const DesignVector& x) const {
    for (std::size_t i = 0; i < DesignVector::kGenes; ++i)
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
}

DesignVector DesignBounds::clamp(DesignVector x) const {
    for (std::size_t i = 0; i < DesignVector::kGenes; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    return x;
}

} // namespace leodesign
