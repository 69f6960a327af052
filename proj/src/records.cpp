#include "diamcert/records.hpp"

#include "diamcert/errors.hpp"

namespace diamcert {

namespace {

template <typename E, std::size_t N>
E parse_enum(const std::string& s, const std::pair<const char*, E> (&table)[N], const char* what) {
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  throw ParseError(std::string("unknown ") + what + " '" + s + "'");
}

constexpr std::pair<const char*, Step> kSteps[] = {{"B0", Step::B0}, {"B1", Step::B1}, {"B2", Step::B2}};
constexpr std::pair<const char*, ArithmeticMode> kModes[] = {{"rigorous", ArithmeticMode::Rigorous},
                                                             {"float-replica", ArithmeticMode::FloatReplica}};
constexpr std::pair<const char*, ComparisonKind> kKinds[] = {{"tilde", ComparisonKind::TildeVsBound},
                                                             {"larman", ComparisonKind::LarmanVsBound}};
constexpr std::pair<const char*, RecordLevel> kLevels[] = {
    {"all", RecordLevel::All}, {"critical", RecordLevel::Critical}, {"auto", RecordLevel::Auto}};

template <typename E, std::size_t N>
const char* name_of(E v, const std::pair<const char*, E> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (v == value) return name;
  }
  return "?";
}

}  // namespace

const char* to_string(Step s) { return name_of(s, kSteps); }
const char* to_string(ArithmeticMode m) { return name_of(m, kModes); }
const char* to_string(ComparisonKind k) { return name_of(k, kKinds); }
const char* to_string(RecordLevel r) { return name_of(r, kLevels); }

const char* to_string(FailureKind k) {
  return k == FailureKind::BoundExceeded ? "bound-exceeded" : "crossing-margin";
}

Step step_from_string(const std::string& s) { return parse_enum(s, kSteps, "step"); }
ArithmeticMode mode_from_string(const std::string& s) { return parse_enum(s, kModes, "mode"); }
ComparisonKind kind_from_string(const std::string& s) { return parse_enum(s, kKinds, "comparison kind"); }
RecordLevel record_level_from_string(const std::string& s) { return parse_enum(s, kLevels, "record level"); }

std::string FailureReport::error_line() const {
  const std::string pair = "(" + std::to_string(d) + "," + std::to_string(n) + ")";
  if (kind == FailureKind::CrossingMargin) {
    return "Error: f(" + std::to_string(d) + ", n) - 2^(d-3) n is not certified nondecreasing at n_L " + pair;
  }
  return "Error: f ∈ " + f_enclosure + " [Ours] < " + tilde_delta.get_str() + " [tilde] " + pair;
}

}  // namespace diamcert
