#include "collabnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "collabnet/error.hpp"

namespace collabnet {

namespace {

// Draws built directly on mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t below(std::size_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential(double mean) { return -mean * std::log(1.0 - uniform()); }

 private:
  std::mt19937_64 engine_;
};

double truncated_geometric_mean(double p, std::size_t min_size, std::size_t max_size) {
  double weight = 1.0;
  double norm = 0.0;
  double acc = 0.0;
  for (std::size_t k = min_size; k <= max_size; ++k) {
    norm += weight;
    acc += weight * static_cast<double>(k);
    weight *= 1.0 - p;
  }
  return acc / norm;
}

double target_team_mean(const SynthConfig& c) {
  return c.team_size.mean.value_or(100.0 / c.contribution_mean_target);
}

std::string padded(char prefix, std::size_t i, std::size_t total) {
  const std::size_t width = std::to_string(total).size();
  std::string digits = std::to_string(i + 1);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

std::size_t draw_team_size(Rng& rng, double p, const TeamSizeModel& model) {
  // Inverse CDF over the truncated support.
  const std::size_t max_size = model.max_size;
  const double u = rng.uniform();
  const double total =
      1.0 - std::pow(1.0 - p, static_cast<double>(max_size - model.min_size + 1));
  double cdf = 0.0;
  double mass = p;
  for (std::size_t k = model.min_size; k < max_size; ++k) {
    cdf += mass / total;
    if (u < cdf) return k;
    mass *= 1.0 - p;
  }
  return max_size;
}

// Integer shares >= 1 summing to 100, proportional to the noisy weights, by
// largest remainder.
std::vector<int> split_hundred(Rng& rng, const std::vector<double>& role_weight,
                               double sigma) {
  const std::size_t k = role_weight.size();
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = role_weight[i] * std::exp(sigma * rng.normal());
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  const int spare = 100 - static_cast<int>(k);  // one point reserved per member

  std::vector<int> shares(k, 1);
  std::vector<std::pair<double, std::size_t>> remainders(k);
  int used = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = spare * w[i] / sum;
    const int whole = static_cast<int>(std::floor(exact));
    shares[i] += whole;
    used += whole;
    remainders[i] = {exact - whole, i};
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
  for (int i = 0; i < spare - used; ++i) ++shares[remainders[static_cast<std::size_t>(i)].second];
  return shares;
}

// Weighted draw over [lo, hi) skipping taken slots; npos when nothing is free.
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t weighted_pick(Rng& rng, const std::vector<double>& weight,
                          const std::vector<char>& taken, std::size_t lo, std::size_t hi,
                          std::size_t skip_lo = 0, std::size_t skip_hi = 0) {
  auto excluded = [&](std::size_t m) { return taken[m] || (m >= skip_lo && m < skip_hi); };
  double total = 0.0;
  for (std::size_t m = lo; m < hi; ++m) {
    if (!excluded(m)) total += weight[m];
  }
  if (total <= 0.0) return kNone;
  double target = rng.uniform() * total;
  std::size_t pick = kNone;
  for (std::size_t m = lo; m < hi; ++m) {
    if (excluded(m)) continue;
    pick = m;
    target -= weight[m];
    if (target < 0.0) break;
  }
  return pick;
}

}  // namespace

double truncated_geometric_p(double mean, std::size_t min_size, std::size_t max_size) {
  if (min_size == 0 || min_size > max_size) {
    throw ConfigError("team size bounds must satisfy 1 <= min <= max");
  }
  const double lowest = static_cast<double>(min_size);
  const double uniform_mean = (static_cast<double>(max_size) + lowest) / 2.0;
  if (!(mean >= lowest) || (!(mean < uniform_mean) && min_size != max_size)) {
    throw ConfigError("team size mean must lie in [min, (min + max) / 2)");
  }
  if (mean == lowest) return 1.0;
  // The truncated mean decreases monotonically in p.
  double lo = 1e-12;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (truncated_geometric_mean(mid, min_size, max_size) > mean ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void validate(const SynthConfig& c) {
  if (c.n_projects == 0) throw ConfigError("n_projects must be positive");
  if (c.n_members == 0) throw ConfigError("n_members must be positive");
  for (double w : c.type_mix) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("type mix weights must be positive");
  }
  if (c.team_size.max_size == 0 || c.team_size.max_size > 100) {
    throw ConfigError("max team size must lie in [1, 100]");
  }
  if (c.team_size.max_size > c.n_members) {
    throw ConfigError("max team size exceeds the member pool");
  }
  if (!(c.contribution_mean_target > 0.0) || c.contribution_mean_target > 100.0) {
    throw ConfigError("contribution mean target must lie in (0, 100]");
  }
  if (c.group_size == 0) throw ConfigError("group size must be positive");
  if (c.department_size == 0) throw ConfigError("department size must be positive");
  if (!(c.support_fraction >= 0.0) || !(c.support_fraction < 1.0)) {
    throw ConfigError("support fraction must lie in [0, 1)");
  }
  if (!(c.liaison_fraction >= 0.0) || !(c.liaison_fraction < 1.0)) {
    throw ConfigError("liaison fraction must lie in [0, 1)");
  }
  if (!(c.outsider_probability >= 0.0) || !(c.liaison_probability >= 0.0) ||
      c.outsider_probability + c.liaison_probability > 1.0) {
    throw ConfigError("outsider and liaison probabilities must be >= 0 and sum to <= 1");
  }
  if (!(c.attachment_offset > 0.0)) throw ConfigError("attachment offset must be positive");
  if (!(c.leader_weight > 0.0) || !(c.regular_weight > 0.0) || !(c.outsider_weight > 0.0) ||
      !(c.liaison_weight > 0.0)) {
    throw ConfigError("role weights must be positive");
  }
  if (!(c.contribution_noise >= 0.0)) throw ConfigError("contribution noise must be >= 0");
  if (!(c.ic_mean_target >= 0.0)) throw ConfigError("ic mean target must be >= 0");
  truncated_geometric_p(target_team_mean(c), c.team_size.min_size, c.team_size.max_size);
}

std::array<std::size_t, 3> type_counts(const SynthConfig& c) {
  const double total = c.type_mix[0] + c.type_mix[1] + c.type_mix[2];
  std::array<std::size_t, 3> counts{};
  std::array<std::pair<double, std::size_t>, 3> rem{};
  std::size_t used = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = static_cast<double>(c.n_projects) * c.type_mix[i] / total;
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    used += counts[i];
    rem[i] = {exact - std::floor(exact), i};
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t i = 0; used < c.n_projects; ++i, ++used) ++counts[rem[i].second];
  return counts;
}

std::vector<ContributionRecord> generate(const SynthConfig& config) {
  validate(config);
  Rng rng(config.seed);

  const double p = truncated_geometric_p(target_team_mean(config), config.team_size.min_size,
                                         config.team_size.max_size);
  const double project_ic_mean =
      config.ic_mean_target * 100.0 / config.contribution_mean_target;
  const std::size_t n_members = config.n_members;
  // Members are laid out as [grouped | liaisons | support].
  auto pool_size = [&](double fraction) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n_members)));
  };
  const std::size_t n_support = pool_size(config.support_fraction);
  const std::size_t n_liaison = pool_size(config.liaison_fraction);
  if (n_support + n_liaison >= n_members) {
    throw ConfigError("support and liaison pools leave no group members");
  }
  const std::size_t n_grouped = n_members - n_support - n_liaison;
  const std::size_t support_lo = n_grouped + n_liaison;
  const std::size_t group_size = std::min(config.group_size, n_grouped);
  const std::size_t n_groups = (n_grouped + group_size - 1) / group_size;
  const std::size_t n_departments =
      (n_groups + config.department_size - 1) / config.department_size;
  // Liaisons of department d occupy [liaison_lo(d), liaison_lo(d + 1)).
  auto liaison_lo = [&](std::size_t d) { return n_grouped + d * n_liaison / n_departments; };

  std::vector<ProjectType> types;
  types.reserve(config.n_projects);
  const auto counts = type_counts(config);
  for (std::size_t t = 0; t < 3; ++t) types.insert(types.end(), counts[t], kAllProjectTypes[t]);
  for (std::size_t i = types.size(); i > 1; --i) std::swap(types[i - 1], types[rng.below(i)]);

  std::vector<std::string> member_ids(n_members);
  for (std::size_t m = 0; m < n_members; ++m) member_ids[m] = padded('M', m, n_members);

  std::vector<double> member_weight(n_members, config.attachment_offset);
  std::vector<double> group_weight(n_groups, config.attachment_offset);
  const std::vector<char> no_groups_taken(n_groups, 0);
  std::vector<char> taken(n_members, 0);

  struct Slot {
    std::size_t member;
    double role_weight;
  };
  std::vector<ContributionRecord> records;
  std::vector<Slot> team;
  for (std::size_t proj = 0; proj < config.n_projects; ++proj) {
    const std::size_t size = draw_team_size(rng, p, config.team_size);
    const std::size_t group = weighted_pick(rng, group_weight, no_groups_taken, 0, n_groups);
    const std::size_t g_lo = group * group_size;
    const std::size_t g_hi = std::min(g_lo + group_size, n_grouped);

    team.clear();
    auto take = [&](std::size_t m, double role) {
      taken[m] = 1;
      team.push_back({m, role});
    };
    take(weighted_pick(rng, member_weight, taken, g_lo, g_hi), config.leader_weight);
    while (team.size() < size) {
      std::size_t m = kNone;
      double role = config.regular_weight;
      const double u = rng.uniform();
      if (u < config.liaison_probability) {
        const std::size_t d = group / config.department_size;
        m = weighted_pick(rng, member_weight, taken, liaison_lo(d), liaison_lo(d + 1));
        role = config.liaison_weight;
      } else if (u < config.liaison_probability + config.outsider_probability) {
        m = n_support > 0
                ? weighted_pick(rng, member_weight, taken, support_lo, n_members)
                : weighted_pick(rng, member_weight, taken, 0, n_grouped, g_lo, g_hi);
        role = config.outsider_weight;
      }
      if (m == kNone) {
        m = weighted_pick(rng, member_weight, taken, g_lo, g_hi);
        role = config.regular_weight;
      }
      if (m == kNone) {
        // Group exhausted: anyone left in the pool joins as an outsider.
        m = weighted_pick(rng, member_weight, taken, support_lo, n_members);
        if (m == kNone) m = weighted_pick(rng, member_weight, taken, 0, n_members);
        role = config.outsider_weight;
      }
      take(m, role);
    }
    group_weight[group] += 1.0;
    for (const Slot& s : team) {
      taken[s.member] = 0;
      member_weight[s.member] += 1.0;
    }

    std::vector<double> roles;
    roles.reserve(team.size());
    for (const Slot& s : team) roles.push_back(s.role_weight);
    const auto shares = split_hundred(rng, roles, config.contribution_noise);

    std::vector<std::pair<std::size_t, int>> rows;
    for (std::size_t k = 0; k < team.size(); ++k) rows.emplace_back(team[k].member, shares[k]);
    std::sort(rows.begin(), rows.end());

    const double project_ic = std::round(rng.exponential(project_ic_mean) * 100.0) / 100.0;
    const std::string project_id = padded('P', proj, config.n_projects);
    for (const auto& [member, share] : rows) {
      records.push_back({project_id, member_ids[member], static_cast<double>(share),
                         project_ic, types[proj]});
    }
  }
  return records;
}

}  // namespace collabnet
