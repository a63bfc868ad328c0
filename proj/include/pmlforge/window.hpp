// The design window: spectral intervals [-1, lambda1] (propagative) and
// [lambda2, lambda3] (evanescent), and the s-segments they induce under
// the principal branch, S_p = i [sqrt(-lambda1), 1] and
// S_e = [sqrt(lambda2), sqrt(lambda3)].

#pragma once

#include "pmlforge/zolotarev.hpp"

namespace pmlforge {

struct SpectralWindow {
    double lambda1;  // < 0, propagative upper edge
    double lambda2;  // > 0, evanescent lower edge
    double lambda3;  // >= lambda2

    // Throws std::invalid_argument unless -1 < lambda1 < 0 < lambda2 <= lambda3.
    void validate() const;

    Segment evanescent_segment() const;
    Segment propagative_segment() const;
};

}  // namespace pmlforge
