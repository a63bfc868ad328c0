// Self-checks for a finished design, grouped by the property they probe.
// Each group re-derives its data from the design alone (no reference to
// how the design was produced), so a file edited after the fact fails the
// group whose invariant it breaks. Exceptions raised inside a group mark
// that group failed instead of aborting the run.

#pragma once

#include <string>
#include <vector>

#include "pmlforge/composite.hpp"

namespace pmlforge {

struct GroupResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<GroupResult> groups;

    bool all_pass() const {
        for (const auto& g : groups)
            if (!g.pass) return false;
        return true;
    }
};

// Runs all groups: equioscillation, roundtrips, fe_fd_equivalence,
// fixed_point, multiplicativity, node_exactness.
ValidationReport run_validation(const LayerDesign& d);

}  // namespace pmlforge
