#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collabnet/ingest.hpp"

namespace collabnet {

// Linkage between two projects that share at least one member:
//   T_ab = (1/n) * sum over common members k of (c_a[k] + c_b[k]) / 2
// where n is the number of common members and c are contribution percents.
struct PairLinkage {
  std::string project_a;  // project_a < project_b
  std::string project_b;
  std::vector<std::string> common_members;  // ascending
  std::size_t n_common = 0;
  double linkage = 0.0;

  friend bool operator==(const PairLinkage&, const PairLinkage&) = default;
};

// Pairs are kept in canonical (project_a, project_b) order.
class LinkageTable {
 public:
  LinkageTable() = default;
  explicit LinkageTable(std::vector<PairLinkage> pairs);

  const std::vector<PairLinkage>& pairs() const noexcept { return pairs_; }
  bool empty() const noexcept { return pairs_.empty(); }
  std::size_t size() const noexcept { return pairs_.size(); }

  // Both are nullopt for an empty table.
  std::optional<double> min_linkage() const noexcept { return min_; }
  std::optional<double> max_linkage() const noexcept { return max_; }

  // Order of the two ids does not matter.
  const PairLinkage* find(std::string_view a, std::string_view b) const;

 private:
  std::vector<PairLinkage> pairs_;
  std::optional<double> min_;
  std::optional<double> max_;
};

// Intersection of the two member sets, ascending. Throws std::invalid_argument
// when both arguments are the same project.
std::vector<std::string> common_members(const Project& a, const Project& b);

// nullopt when the teams are disjoint. Symmetric in its arguments.
std::optional<PairLinkage> pair_linkage(const Project& a, const Project& b);

struct LinkageBuildStats {
  std::size_t candidate_pairs_visited = 0;  // distinct pairs evaluated
};

// Enumerates co-membered pairs through the member index, so only pairs that
// share a member are ever evaluated.
LinkageTable build_linkage_table(const Dataset& d, LinkageBuildStats* stats = nullptr);

// CSV dump: project_a,project_b,n_common,linkage (6 decimals).
void write_linkage_csv(std::ostream& out, const LinkageTable& table);

}  // namespace collabnet
