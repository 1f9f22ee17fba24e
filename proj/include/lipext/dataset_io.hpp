#pragma once

#include <string>
#include <variant>

#include "lipext/types.hpp"

namespace lipext {

using Dataset = std::variant<JetDataset, MappingDataset>;

// Dataset file format: a JSON object with fields
//   kind      : "jet" | "mapping"
//   dim_x     : integer
//   dim_y     : integer (mapping only)
//   points    : array of arrays of numbers
//   values    : jet -> array of numbers; mapping -> array of arrays
//   gradients : jet only, array of arrays
// Unknown fields are rejected.
Dataset load_dataset(const std::string& path);

JetDataset load_jet(const std::string& path);
MappingDataset load_mapping(const std::string& path);

void save_dataset(const JetDataset& data, const std::string& path);
void save_dataset(const MappingDataset& data, const std::string& path);

/// Stable content digest of a dataset (hex string); used to tie reports to inputs.
std::string dataset_digest(const Dataset& data);

}  // namespace lipext
