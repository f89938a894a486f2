#include "collabnet/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "collabnet/error.hpp"
#include "collabnet/hash.hpp"
#include "text_format.hpp"

namespace collabnet {

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Splits one line, honouring double-quoted fields with "" escapes.
std::vector<std::string> split_fields(std::string_view line, char delim,
                                      std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && trim(cur).empty()) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == delim) {
      fields.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError(row, "unterminated quoted field");
  fields.push_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

using detail::format_real;

enum Column { kProject, kMember, kContribution, kIcScore, kType, kColumnCount };

constexpr std::array<std::string_view, kColumnCount> kColumnNames = {
    "project_id", "member_id", "contribution_pct", "ic_score", "project_type"};

struct Layout {
  std::array<std::optional<std::size_t>, kColumnCount> index;
  std::size_t width = 0;
};

Layout read_header(const std::vector<std::string>& header, std::size_t row) {
  Layout layout;
  layout.width = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = lower(header[i]);
    const auto it = std::find(kColumnNames.begin(), kColumnNames.end(), name);
    if (it == kColumnNames.end()) {
      throw ParseError(row, "unknown column '" + header[i] + "'");
    }
    auto& slot = layout.index[static_cast<std::size_t>(it - kColumnNames.begin())];
    if (slot) throw ParseError(row, "duplicate column '" + header[i] + "'");
    slot = i;
  }
  for (int c : {kProject, kMember, kContribution, kType}) {
    if (!layout.index[c]) {
      throw ParseError(row, "missing column '" + std::string(kColumnNames[c]) + "'");
    }
  }
  return layout;
}

ContributionRecord read_row(const std::vector<std::string>& f, const Layout& layout,
                            std::size_t row) {
  if (f.size() != layout.width) {
    throw ParseError(row, "expected " + std::to_string(layout.width) + " columns, got " +
                              std::to_string(f.size()));
  }
  ContributionRecord r;
  r.project_id = f[*layout.index[kProject]];
  r.member_id = f[*layout.index[kMember]];
  if (r.project_id.empty()) throw ParseError(row, "empty project_id");
  if (r.member_id.empty()) throw ParseError(row, "empty member_id");

  const auto pct = parse_number(f[*layout.index[kContribution]]);
  if (!pct) throw ParseError(row, "unparseable contribution_pct");
  if (*pct < 0.0 || *pct > 100.0) throw ParseError(row, "contribution_pct out of range");
  r.contribution_pct = *pct;

  if (layout.index[kIcScore]) {
    const std::string& raw = f[*layout.index[kIcScore]];
    if (!raw.empty()) {
      const auto ic = parse_number(raw);
      if (!ic) throw ParseError(row, "unparseable ic_score");
      if (*ic < 0.0) throw ParseError(row, "negative ic_score");
      r.ic_score = *ic;
    }
  }

  const auto type = parse_project_type(f[*layout.index[kType]]);
  if (!type) {
    throw ParseError(row, "unknown project_type '" + f[*layout.index[kType]] + "'");
  }
  r.project_type = *type;
  return r;
}

}  // namespace

std::string_view to_string(ProjectType type) noexcept {
  switch (type) {
    case ProjectType::IP:
      return "ip";
    case ProjectType::Paper:
      return "paper";
    case ProjectType::Prototype:
      return "prototype";
  }
  return "unknown";
}

std::optional<ProjectType> parse_project_type(std::string_view text) {
  const std::string key = lower(trim(text));
  for (ProjectType t : kAllProjectTypes) {
    if (key == to_string(t)) return t;
  }
  return std::nullopt;
}

std::set<ProjectType> parse_project_types(std::string_view list) {
  std::set<ProjectType> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view item = trim(list.substr(start, end - start));
    if (!item.empty()) {
      if (lower(item) == "all") {
        out.insert(std::begin(kAllProjectTypes), std::end(kAllProjectTypes));
      } else if (const auto t = parse_project_type(item)) {
        out.insert(*t);
      } else {
        throw ConfigError("unknown project type '" + std::string(item) + "'");
      }
    }
    start = end + 1;
  }
  if (out.empty()) throw ConfigError("empty project type list");
  return out;
}

ParseResult parse_records(std::istream& source, const ParseOptions& options) {
  ParseResult result;
  std::optional<Layout> layout;
  std::string line;
  std::size_t row = 0;
  while (std::getline(source, line)) {
    ++row;
    std::string_view view = line;
    if (row == 1 && view.starts_with(kBom)) view.remove_prefix(kBom.size());
    if (trim(view).empty()) continue;

    if (!layout) {
      // Header problems are never skippable.
      layout = read_header(split_fields(view, options.delimiter, row), row);
      continue;
    }
    try {
      result.records.push_back(
          read_row(split_fields(view, options.delimiter, row), *layout, row));
    } catch (const ParseError& e) {
      if (!options.lenient) throw;
      result.skipped.push_back({e.row(), e.reason()});
    }
  }
  if (!layout) throw ParseError(1, "missing header row");
  return result;
}

ParseResult parse_records_from_string(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_records(in, options);
}

void write_records(std::ostream& out, const std::vector<ContributionRecord>& records,
                   char delimiter) {
  out << "project_id" << delimiter << "member_id" << delimiter << "contribution_pct"
      << delimiter << "ic_score" << delimiter << "project_type\n";
  for (const auto& r : records) {
    out << r.project_id << delimiter << r.member_id << delimiter
        << format_real(r.contribution_pct) << delimiter
        << (r.ic_score ? format_real(*r.ic_score) : std::string()) << delimiter
        << to_string(r.project_type) << '\n';
  }
}

double Project::contribution_sum() const noexcept {
  double sum = 0.0;
  for (const auto& [id, m] : members) sum += m.contribution_pct;
  return sum;
}

const Project* Dataset::find(std::string_view project_id) const {
  const auto it = std::lower_bound(
      projects_.begin(), projects_.end(), project_id,
      [](const Project& p, std::string_view id) { return p.id < id; });
  return it != projects_.end() && it->id == project_id ? &*it : nullptr;
}

void Dataset::rebuild_index() {
  member_index_.clear();
  for (const auto& p : projects_) {
    for (const auto& [member, share] : p.members) member_index_[member].push_back(p.id);
  }
}

std::string Dataset::fingerprint() const {
  std::ostringstream out;
  write_records(out, to_records(*this));
  return sha256_hex(out.str());
}

Dataset aggregate(const std::vector<ContributionRecord>& records,
                  const AggregateOptions& options) {
  std::map<std::string, Project> by_id;
  for (const auto& r : records) {
    auto [it, inserted] = by_id.try_emplace(r.project_id);
    Project& p = it->second;
    if (inserted) {
      p.id = r.project_id;
      p.type = r.project_type;
    } else if (p.type != r.project_type) {
      throw InputError("project " + r.project_id + " listed with types " +
                       std::string(to_string(p.type)) + " and " +
                       std::string(to_string(r.project_type)));
    }
    if (!p.members.try_emplace(r.member_id, Membership{r.contribution_pct, r.ic_score})
             .second) {
      throw InputError("duplicate (project, member) pair (" + r.project_id + ", " +
                       r.member_id + ")");
    }
  }

  Dataset d;
  d.projects_.reserve(by_id.size());
  for (auto& [id, p] : by_id) {
    const double sum = p.contribution_sum();
    if (sum > kContributionSumTolerance) {
      const std::string msg = "project " + id + " contribution sum " +
                              format_real(sum) + " exceeds 100";
      if (options.strict) throw InputError(msg);
      d.warnings_.push_back(msg);
    }
    d.projects_.push_back(std::move(p));
  }
  d.rebuild_index();
  return d;
}

Dataset filter_by_type(const Dataset& d, const std::set<ProjectType>& types) {
  if (types.empty()) throw ConfigError("project type filter must not be empty");
  Dataset out;
  for (const auto& p : d.projects_) {
    if (types.contains(p.type)) out.projects_.push_back(p);
  }
  out.type_filter_.clear();
  std::set_intersection(d.type_filter_.begin(), d.type_filter_.end(), types.begin(),
                        types.end(),
                        std::inserter(out.type_filter_, out.type_filter_.end()));
  out.warnings_ = d.warnings_;
  out.rebuild_index();
  return out;
}

std::vector<ContributionRecord> to_records(const Dataset& d) {
  std::vector<ContributionRecord> out;
  for (const auto& p : d.projects()) {
    for (const auto& [member, share] : p.members) {
      out.push_back({p.id, member, share.contribution_pct, share.ic_score, p.type});
    }
  }
  return out;
}

}  // namespace collabnet
