#include "collabnet/linkage.hpp"

#include <algorithm>
#include <ostream>
#include <map>
#include <stdexcept>
#include <tuple>

#include "text_format.hpp"

namespace collabnet {

namespace {

bool key_less(const PairLinkage& x, const PairLinkage& y) {
  return std::tie(x.project_a, x.project_b) < std::tie(y.project_a, y.project_b);
}

}  // namespace

LinkageTable::LinkageTable(std::vector<PairLinkage> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(), key_less);
  for (const auto& p : pairs_) {
    min_ = min_ ? std::min(*min_, p.linkage) : p.linkage;
    max_ = max_ ? std::max(*max_, p.linkage) : p.linkage;
  }
}

const PairLinkage* LinkageTable::find(std::string_view a, std::string_view b) const {
  if (b < a) std::swap(a, b);
  const auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), std::pair{a, b},
      [](const PairLinkage& p, const std::pair<std::string_view, std::string_view>& key) {
        return std::pair<std::string_view, std::string_view>{p.project_a, p.project_b} <
               key;
      });
  if (it == pairs_.end() || it->project_a != a || it->project_b != b) return nullptr;
  return &*it;
}

std::vector<std::string> common_members(const Project& a, const Project& b) {
  if (a.id == b.id) throw std::invalid_argument("common_members: same project " + a.id);
  std::vector<std::string> out;
  auto ia = a.members.begin();
  auto ib = b.members.begin();
  while (ia != a.members.end() && ib != b.members.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      out.push_back(ia->first);
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::optional<PairLinkage> pair_linkage(const Project& a, const Project& b) {
  const Project& lo = a.id < b.id ? a : b;
  const Project& hi = a.id < b.id ? b : a;
  auto common = common_members(lo, hi);
  if (common.empty()) return std::nullopt;

  double sum = 0.0;
  for (const auto& k : common) {
    sum += (lo.members.at(k).contribution_pct + hi.members.at(k).contribution_pct) / 2.0;
  }
  PairLinkage out;
  out.project_a = lo.id;
  out.project_b = hi.id;
  out.n_common = common.size();
  out.linkage = sum / static_cast<double>(common.size());
  out.common_members = std::move(common);
  return out;
}

LinkageTable build_linkage_table(const Dataset& d, LinkageBuildStats* stats) {
  const auto& projects = d.projects();
  const std::size_t n = projects.size();

  // Member -> ascending project positions. Positions follow id order.
  std::vector<std::vector<std::size_t>> member_projects;
  member_projects.reserve(d.member_index().size());
  std::map<std::string_view, std::size_t> member_slot;
  for (const auto& [member, ids] : d.member_index()) {
    std::vector<std::size_t> positions;
    positions.reserve(ids.size());
    for (const auto& id : ids) {
      const Project* p = d.find(id);
      positions.push_back(static_cast<std::size_t>(p - projects.data()));
    }
    member_slot.emplace(member, member_projects.size());
    member_projects.push_back(std::move(positions));
  }

  std::vector<PairLinkage> pairs;
  std::vector<std::size_t> stamp(n, n);  // stamp[j] == i marks j as seen for row i
  std::vector<std::size_t> partners;
  std::size_t visited = 0;
  for (std::size_t i = 0; i < n; ++i) {
    partners.clear();
    for (const auto& [member, share] : projects[i].members) {
      const auto& list = member_projects[member_slot.at(member)];
      auto it = std::upper_bound(list.begin(), list.end(), i);
      for (; it != list.end(); ++it) {
        if (stamp[*it] != i) {
          stamp[*it] = i;
          partners.push_back(*it);
        }
      }
    }
    std::sort(partners.begin(), partners.end());
    for (std::size_t j : partners) {
      ++visited;
      if (auto link = pair_linkage(projects[i], projects[j])) {
        pairs.push_back(std::move(*link));
      }
    }
  }
  if (stats) stats->candidate_pairs_visited = visited;
  return LinkageTable(std::move(pairs));
}

void write_linkage_csv(std::ostream& out, const LinkageTable& table) {
  out << "project_a,project_b,n_common,linkage\n";
  for (const auto& p : table.pairs()) {
    out << p.project_a << ',' << p.project_b << ',' << p.n_common << ','
        << detail::format_fixed6(p.linkage) << '\n';
  }
}

}  // namespace collabnet
