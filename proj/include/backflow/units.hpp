#pragma once

#include <stdexcept>

namespace backflow {

/// Physical constants carried through every formula. Defaults are the
/// natural units hbar = m = 1; nothing in the library assumes them.
struct Units {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw std::invalid_argument("Units: hbar and mass must be positive");
    }
};

}  // namespace backflow
