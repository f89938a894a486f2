#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace collabnet {

enum class ProjectType { IP, Paper, Prototype };

inline constexpr ProjectType kAllProjectTypes[] = {
    ProjectType::IP, ProjectType::Paper, ProjectType::Prototype};

// Canonical lowercase name: "ip", "paper", "prototype".
std::string_view to_string(ProjectType type) noexcept;

// Case-insensitive; nullopt for anything else.
std::optional<ProjectType> parse_project_type(std::string_view text);

// Parses a comma separated list such as "ip,paper". Throws ConfigError on an
// unknown name or an empty list.
std::set<ProjectType> parse_project_types(std::string_view list);

// One row of raw input.
struct ContributionRecord {
  std::string project_id;
  std::string member_id;
  double contribution_pct = 0.0;  // percent units, [0, 100]
  std::optional<double> ic_score;
  ProjectType project_type = ProjectType::IP;

  friend bool operator==(const ContributionRecord&,
                         const ContributionRecord&) = default;
};

struct ParseOptions {
  char delimiter = ',';
  // Skip malformed rows and report them instead of failing on the first one.
  bool lenient = false;
};

struct RowIssue {
  std::size_t row;  // 1-based physical line number, header is row 1
  std::string reason;
};

struct ParseResult {
  std::vector<ContributionRecord> records;
  std::vector<RowIssue> skipped;
};

// Reads a delimited table with a header row naming the columns project_id,
// member_id, contribution_pct, project_type and optionally ic_score (any
// order). Blank lines are skipped; a leading UTF-8 BOM is ignored; fields may
// be double-quoted. Throws ParseError unless options.lenient is set.
ParseResult parse_records(std::istream& source, const ParseOptions& options = {});
ParseResult parse_records_from_string(std::string_view text,
                                      const ParseOptions& options = {});

// Writes records in the canonical column order, header included.
void write_records(std::ostream& out, const std::vector<ContributionRecord>& records,
                   char delimiter = ',');

struct Membership {
  double contribution_pct = 0.0;
  std::optional<double> ic_score;

  friend bool operator==(const Membership&, const Membership&) = default;
};

struct Project {
  std::string id;
  ProjectType type = ProjectType::IP;
  std::map<std::string, Membership> members;  // keyed by member id

  double contribution_sum() const noexcept;

  friend bool operator==(const Project&, const Project&) = default;
};

// Per-project sums up to this value pass silently.
inline constexpr double kContributionSumTolerance = 100.5;

struct AggregateOptions {
  // Over-tolerance contribution sums become errors instead of warnings.
  bool strict = false;
};

// Immutable after construction. Projects are held in ascending id order
// (plain byte comparison) and the member index lists project ids in the same
// order.
class Dataset {
 public:
  Dataset() = default;

  const std::vector<Project>& projects() const noexcept { return projects_; }
  const std::map<std::string, std::vector<std::string>>& member_index() const noexcept {
    return member_index_;
  }
  const std::set<ProjectType>& type_filter() const noexcept { return type_filter_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::size_t size() const noexcept { return projects_.size(); }
  const Project* find(std::string_view project_id) const;

  // Stable content hash over the canonical record serialization.
  std::string fingerprint() const;

  friend Dataset aggregate(const std::vector<ContributionRecord>& records,
                           const AggregateOptions& options);
  friend Dataset filter_by_type(const Dataset& d, const std::set<ProjectType>& types);

 private:
  void rebuild_index();

  std::vector<Project> projects_;
  std::map<std::string, std::vector<std::string>> member_index_;
  std::set<ProjectType> type_filter_{std::begin(kAllProjectTypes),
                                     std::end(kAllProjectTypes)};
  std::vector<std::string> warnings_;
};

// Groups records into projects. Throws InputError on a duplicate
// (project, member) pair, on a project listed with two different types, and
// in strict mode on a contribution sum above kContributionSumTolerance.
Dataset aggregate(const std::vector<ContributionRecord>& records,
                  const AggregateOptions& options = {});

// Keeps the projects whose type is in `types`. Throws ConfigError when
// `types` is empty.
Dataset filter_by_type(const Dataset& d, const std::set<ProjectType>& types);

// Flattens a dataset back into records, ordered by project id then member id.
std::vector<ContributionRecord> to_records(const Dataset& d);

}  // namespace collabnet
