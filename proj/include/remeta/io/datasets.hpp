#pragma once

#include "remeta/io/csv.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace remeta::io {

/// Names of the bundled example data sets ("sbp", "cisapride").
std::vector<std::string_view> dataset_names();

/// CSV text of a bundled data set, or nullopt for an unknown name.
std::optional<std::string_view> dataset_csv(std::string_view name);

/// Parsed bundled data set; throws DomainError for an unknown name.
StudyData load_dataset(std::string_view name);

}  // namespace remeta::io
