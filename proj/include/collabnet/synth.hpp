#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "collabnet/ingest.hpp"

namespace collabnet {

// Team sizes follow a geometric law truncated to [min_size, max_size].
struct TeamSizeModel {
  // Target mean team size; 100 / contribution_mean_target when unset.
  std::optional<double> mean;
  std::size_t min_size = 1;
  std::size_t max_size = 15;
};

struct SynthConfig {
  std::uint64_t seed = 42;
  std::size_t n_projects = 2300;
  std::size_t n_members = 1000;
  // Relative weights of IP, Paper, Prototype; normalised before use.
  std::array<double, 3> type_mix = {630.0, 1717.0, 539.0};
  TeamSizeModel team_size;
  double contribution_mean_target = 23.3;
  // Share of the member pool that belongs to no group and only ever joins
  // projects as an outside collaborator.
  double support_fraction = 0.2;
  // The remaining members form research groups of this many people. A project
  // is run by one group: its leader and regulars come from that group.
  std::size_t group_size = 8;
  // Chance that a non-leader slot goes to a support member.
  double outsider_probability = 0.15;
  // Consecutive groups are organised into departments of this many groups.
  std::size_t department_size = 8;
  // Share of the member pool acting as liaisons: each serves one department
  // and takes a mid-sized share in projects of any of its groups.
  double liaison_fraction = 0.05;
  // Chance that a non-leader slot goes to a liaison.
  double liaison_probability = 0.1;
  // Groups and members are drawn with weight attachment_offset + (projects
  // joined so far). Smaller offsets give stronger hubs.
  double attachment_offset = 1.0;
  // Relative share weights per role before noise.
  double leader_weight = 5.0;
  double regular_weight = 1.0;
  double outsider_weight = 0.25;
  double liaison_weight = 3.0;
  // Log-normal sigma applied to the role weights before renormalising.
  double contribution_noise = 0.1;
  // Mean member-level IC-score; project totals are scaled up accordingly.
  double ic_mean_target = 3.16;
};

// Throws ConfigError when the configuration cannot be satisfied.
void validate(const SynthConfig& config);

// Per-type project counts by largest remainder; sums to n_projects.
std::array<std::size_t, 3> type_counts(const SynthConfig& config);

// Success probability of the geometric law on [min_size, max_size] whose
// mean is `mean`.
double truncated_geometric_p(double mean, std::size_t min_size, std::size_t max_size);

// Integer contribution percentages (each >= 1) summing to exactly 100 per
// project, members drawn by preferential attachment, ic_score set to the
// project total. Output is ordered by project id then member id and depends
// only on the config.
std::vector<ContributionRecord> generate(const SynthConfig& config);

}  // namespace collabnet
