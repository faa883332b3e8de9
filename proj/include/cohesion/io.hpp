#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohesion/dist.hpp"

namespace cohesion {

struct ReadOptions {
  /// Alphabet size; otherwise a "# q: Q" comment, otherwise max symbol + 1 (at least 2).
  std::optional<int> q;
  /// Rescale masses to sum to 1 instead of rejecting an off-by-more-than-1e-12 total.
  bool normalize = false;
};

/// CSV with header x0,...,x{n-1},p. Masses are decimals or a/b fractions;
/// lines starting with '#' are comments. Errors name `source` and the line.
JointDistribution parse_distribution_csv(std::istream& in, const std::string& source, const ReadOptions& opts = {});

/// {"n": N, "q": Q, "atoms": [{"x": [...], "p": P}, ...]}
JointDistribution distribution_from_json(const nlohmann::json& j, const ReadOptions& opts = {});
nlohmann::json distribution_to_json(const JointDistribution& p);

/// Dispatches on the extension: .json is JSON, anything else is CSV.
JointDistribution read_distribution(const std::filesystem::path& path, const ReadOptions& opts = {});

/// Writes masses with 17 significant digits so a read gives back identical bits.
void write_distribution_csv(std::ostream& out, const JointDistribution& p,
                            const std::vector<std::string>& comments = {});
void write_distribution_file(const std::filesystem::path& path, const JointDistribution& p,
                             const std::vector<std::string>& comments = {});

}  // namespace cohesion
