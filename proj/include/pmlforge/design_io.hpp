// JSON persistence for designs and for the three standalone layer
// representations the converter works on. Polynomials are serialized as
// root lists (monic implied); complex numbers as [re, im] pairs. The
// serializer emits shortest round-trip decimals, so load(save(d)) is
// bit-identical.

#pragma once

#include <stdexcept>
#include <string>

#include "pmlforge/composite.hpp"

namespace pmlforge {

// Unreadable file, malformed JSON, or a structurally inconsistent design.
struct DesignIOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void save_design(const LayerDesign& d, const std::string& path);
LayerDesign load_design(const std::string& path);

void save_mesh(const FEMesh& mesh, const std::string& path);
FEMesh load_mesh(const std::string& path);

void save_grid(const FDGrid& grid, const std::string& path);
FDGrid load_grid(const std::string& path);

void save_rational(const OddEvenRational& f, const std::string& path);
OddEvenRational load_rational(const std::string& path);

}  // namespace pmlforge
