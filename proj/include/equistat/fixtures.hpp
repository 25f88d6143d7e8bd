#pragma once

#include "equistat/io.hpp"

#include <string>
#include <vector>

namespace equistat {

const std::vector<std::string>& fixture_names();
// Throws InputError on an unknown name.
InstanceFile fixture(const std::string& name);

// Finite correspondence carried by an instance: the table itself, a producer's argmax,
// a network's sampled equilibrium correspondence, an NTU excess supply, or an objective argmax.
// Grids come from the payload ("grid" or "grid_levels"); cap_override replaces the payload "cap".
FiniteCorrespondence to_correspondence(const InstanceFile& inst, std::optional<unsigned> cap_override = {});

}  // namespace equistat
