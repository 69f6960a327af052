#include "diamcert/certificate.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

#include "diamcert/checker.hpp"
#include "diamcert/errors.hpp"
#include "diamcert/limb_row.hpp"

namespace diamcert {

using nlohmann::json;

namespace {

std::string rat(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(std::uint64_t v) { return std::to_string(v); }

mpq_class parse_rat(const json& j) {
  const auto s = j.get<std::string>();
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw ParseError("bad rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

mpz_class parse_z(const json& j) {
  const auto s = j.get<std::string>();
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) {
    throw ParseError("bad integer '" + s + "'");
  }
  return z;
}

std::int64_t parse_i64(const json& j) {
  const mpz_class z = parse_z(j);
  if (!z.fits_slong_p()) throw ParseError("integer out of range: " + z.get_str());
  return z.get_si();
}

std::uint64_t parse_u64(const json& j) {
  const mpz_class z = parse_z(j);
  if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) throw ParseError("integer out of range: " + z.get_str());
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, z.get_mpz_t());
  return v;
}

json poly_json(const RationalPolynomial& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(rat(c));
  return a;
}

RationalPolynomial parse_poly(const json& j) {
  std::vector<mpq_class> c;
  for (const auto& e : j) c.push_back(parse_rat(e));
  return RationalPolynomial(c);
}

json nl_json(const NLRecord& r) {
  return {{"type", "n_l"}, {"d", str(r.d)}, {"n_L", str(r.n_L)}, {"crossing_margin_ok", r.crossing_margin_ok}};
}

NLRecord parse_nl(const json& j) {
  return {parse_i64(j.at("d")), parse_u64(j.at("n_L")), j.at("crossing_margin_ok").get<bool>()};
}

json check_json(const CheckRecord& r) {
  return {{"type", "check"},
          {"step", to_string(r.step)},
          {"d", str(r.d)},
          {"n_lo", str(r.n_lo)},
          {"n_hi", str(r.n_hi)},
          {"pairs_checked", str(r.pairs_checked)},
          {"passed", r.passed},
          {"failed_at", str(r.failed_at)}};
}

CheckRecord parse_check(const json& j) {
  return {step_from_string(j.at("step").get<std::string>()),
          parse_i64(j.at("d")),
          parse_u64(j.at("n_lo")),
          parse_u64(j.at("n_hi")),
          parse_u64(j.at("pairs_checked")),
          j.at("passed").get<bool>(),
          parse_u64(j.at("failed_at"))};
}

json comparison_json(const ComparisonRecord& r) {
  return {{"type", "comparison"},
          {"kind", to_string(r.kind)},
          {"d", str(r.d)},
          {"n", str(r.n)},
          {"V", r.V.get_str()},
          {"m", str(r.m)},
          {"q", rat(r.q)},
          {"outcome", to_string(r.outcome)}};
}

ComparisonRecord parse_comparison(const json& j) {
  return {kind_from_string(j.at("kind").get<std::string>()),
          parse_i64(j.at("d")),
          parse_u64(j.at("n")),
          parse_z(j.at("V")),
          parse_u64(j.at("m")),
          parse_rat(j.at("q")),
          outcome_from_string(j.at("outcome").get<std::string>())};
}

json sturm_json(const SturmCertificate& s) {
  json chain = json::array();
  for (const auto& p : s.chain) chain.push_back(poly_json(p));
  return {{"type", "sturm"},
          {"polynomial", poly_json(s.polynomial)},
          {"chain", chain},
          {"threshold", rat(s.threshold)},
          {"sign_changes_at_threshold", str(static_cast<std::int64_t>(s.sign_changes_at_threshold))},
          {"sign_changes_at_infinity", str(static_cast<std::int64_t>(s.sign_changes_at_infinity))},
          {"sign_at_threshold", str(static_cast<std::int64_t>(s.sign_at_threshold))}};
}

SturmCertificate parse_sturm(const json& j) {
  SturmCertificate s;
  s.polynomial = parse_poly(j.at("polynomial"));
  for (const auto& p : j.at("chain")) s.chain.push_back(parse_poly(p));
  s.threshold = parse_rat(j.at("threshold"));
  s.sign_changes_at_threshold = static_cast<int>(parse_i64(j.at("sign_changes_at_threshold")));
  s.sign_changes_at_infinity = static_cast<int>(parse_i64(j.at("sign_changes_at_infinity")));
  s.sign_at_threshold = static_cast<int>(parse_i64(j.at("sign_at_threshold")));
  return s;
}

const char* provenance_name(DabProvenance p) {
  return p == DabProvenance::SturmCertified ? "sturm-certified" : "user-override";
}

DabProvenance parse_provenance(const std::string& s) {
  if (s == "sturm-certified") return DabProvenance::SturmCertified;
  if (s == "user-override") return DabProvenance::UserOverride;
  throw ParseError("unknown d_ab provenance '" + s + "'");
}

std::vector<json> read_lines(std::istream& in) {
  std::vector<json> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (out.empty()) throw ParseError("empty input");
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

// Tilde values for the requested (d, i) positions, computed row by row from
// d = 3 with each row only as long as later rows need.
std::map<std::pair<std::int64_t, std::size_t>, mpz_class> recompute_values(
    const std::set<std::pair<std::int64_t, std::size_t>>& wanted) {
  std::map<std::pair<std::int64_t, std::size_t>, mpz_class> out;
  if (wanted.empty()) return out;
  const std::int64_t d_top = wanted.rbegin()->first;
  std::vector<std::size_t> need(static_cast<std::size_t>(d_top + 1), 0);
  for (const auto& [d, i] : wanted) need[static_cast<std::size_t>(d)] = std::max(need[static_cast<std::size_t>(d)], i + 1);
  for (std::int64_t d = d_top - 1; d >= 3; --d) {
    need[static_cast<std::size_t>(d)] = std::max(need[static_cast<std::size_t>(d)], need[static_cast<std::size_t>(d + 1)]);
  }
  LimbRow prev, cur;
  cur.resize(need[3]);
  for (std::size_t i = 0; i < need[3]; ++i) cur.set_small(i, i);
  auto harvest = [&](std::int64_t d) {
    for (auto it = wanted.lower_bound({d, 0}); it != wanted.end() && it->first == d; ++it) {
      out[*it] = cur.value(it->second);
    }
  };
  harvest(3);
  for (std::int64_t d = 4; d <= d_top; ++d) {
    std::swap(prev, cur);
    const std::size_t len = need[static_cast<std::size_t>(d)];
    cur.clear();
    cur.resize(len);
    const auto ud = static_cast<std::size_t>(d);
    for (std::size_t i = 0; i < len; ++i) {
      if (i < ud) {
        cur.copy_from(i, prev, i);
      } else {
        cur.set_kk(i, prev, i, (ud + i) / 2 - ud);
      }
    }
    harvest(d);
  }
  return out;
}

}  // namespace

const char* tool_version() { return "0.1.0"; }

void write_certificate(std::ostream& out, const Certificate& c) {
  json header = {{"type", "header"},
                 {"format", c.format},
                 {"tool_version", c.tool_version},
                 {"alpha", str(c.alpha)},
                 {"beta", str(c.beta)},
                 {"l", str(c.l)},
                 {"d_ab", str(c.d_ab)},
                 {"d_ab_provenance", provenance_name(c.dab_provenance)},
                 {"superlinear", c.superlinear},
                 {"mode", to_string(c.mode)},
                 {"max_precision_bits", str(static_cast<std::int64_t>(c.max_precision_bits))},
                 {"max_precision_used", str(static_cast<std::int64_t>(c.max_precision_used))},
                 {"b2_max_d", c.b2_max_d ? json(str(*c.b2_max_d)) : json(nullptr)},
                 {"complete", c.complete()},
                 {"record_level", to_string(c.record_level)},
                 {"comparisons_exact", str(c.stats.exact)},
                 {"comparisons_filtered", str(c.stats.filtered)},
                 {"comparisons_mpfr", str(c.stats.mpfr)},
                 {"step2_table_bytes", str(c.step2_table_bytes)},
                 {"duration_seconds", c.duration_seconds}};
  out << header.dump() << '\n';
  if (c.sturm) out << sturm_json(*c.sturm).dump() << '\n';
  for (const auto& r : c.nl_records) out << nl_json(r).dump() << '\n';
  for (const auto& r : c.check_records) out << check_json(r).dump() << '\n';
  for (const auto& r : c.comparisons) out << comparison_json(r).dump() << '\n';
}

Certificate read_certificate(std::istream& in) {
  const auto lines = read_lines(in);
  return guarded([&] {
    const json& h = lines.front();
    if (h.at("type") != "header") throw ParseError("first line must be the header");
    Certificate c;
    c.format = h.at("format").get<std::string>();
    if (c.format != Certificate{}.format) throw ParseError("unsupported format '" + c.format + "'");
    c.tool_version = h.at("tool_version").get<std::string>();
    c.alpha = parse_i64(h.at("alpha"));
    c.beta = parse_i64(h.at("beta"));
    c.l = parse_i64(h.at("l"));
    c.d_ab = parse_i64(h.at("d_ab"));
    c.dab_provenance = parse_provenance(h.at("d_ab_provenance").get<std::string>());
    c.superlinear = h.at("superlinear").get<bool>();
    c.mode = mode_from_string(h.at("mode").get<std::string>());
    c.max_precision_bits = static_cast<mpfr_prec_t>(parse_i64(h.at("max_precision_bits")));
    c.max_precision_used = static_cast<mpfr_prec_t>(parse_i64(h.at("max_precision_used")));
    if (!h.at("b2_max_d").is_null()) c.b2_max_d = parse_i64(h.at("b2_max_d"));
    c.record_level = record_level_from_string(h.at("record_level").get<std::string>());
    c.stats.exact = parse_u64(h.at("comparisons_exact"));
    c.stats.filtered = parse_u64(h.at("comparisons_filtered"));
    c.stats.mpfr = parse_u64(h.at("comparisons_mpfr"));
    c.stats.max_precision_used = c.max_precision_used;
    c.step2_table_bytes = parse_u64(h.at("step2_table_bytes"));
    c.duration_seconds = h.at("duration_seconds").get<double>();
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const json& j = lines[k];
      const auto type = j.at("type").get<std::string>();
      if (type == "sturm") {
        c.sturm = parse_sturm(j);
      } else if (type == "n_l") {
        c.nl_records.push_back(parse_nl(j));
      } else if (type == "check") {
        c.check_records.push_back(parse_check(j));
      } else if (type == "comparison") {
        c.comparisons.push_back(parse_comparison(j));
      } else {
        throw ParseError("unknown record type '" + type + "'");
      }
    }
    return c;
  });
}

void write_failure(std::ostream& out, const FailureReport& r) {
  json header = {{"type", "failure"},
                 {"alpha", str(r.alpha)},
                 {"beta", str(r.beta)},
                 {"l", str(r.l)},
                 {"d_ab", str(r.d_ab)},
                 {"kind", to_string(r.kind)},
                 {"step", to_string(r.step)},
                 {"d", str(r.d)},
                 {"n", str(r.n)},
                 {"tilde_delta", r.tilde_delta.get_str()},
                 {"f_enclosure", r.f_enclosure},
                 {"superlinear", r.superlinear},
                 {"error", r.error_line()}};
  out << header.dump() << '\n';
  for (const auto& n : r.nl_records) out << nl_json(n).dump() << '\n';
  for (const auto& c : r.check_records) out << check_json(c).dump() << '\n';
}

FailureReport read_failure(std::istream& in) {
  const auto lines = read_lines(in);
  return guarded([&] {
    const json& h = lines.front();
    if (h.at("type") != "failure") throw ParseError("first line must be the failure header");
    FailureReport r;
    r.alpha = parse_i64(h.at("alpha"));
    r.beta = parse_i64(h.at("beta"));
    r.l = parse_i64(h.at("l"));
    r.d_ab = parse_i64(h.at("d_ab"));
    const auto kind = h.at("kind").get<std::string>();
    r.kind = kind == "crossing-margin" ? FailureKind::CrossingMargin : FailureKind::BoundExceeded;
    r.step = step_from_string(h.at("step").get<std::string>());
    r.d = parse_i64(h.at("d"));
    r.n = parse_u64(h.at("n"));
    r.tilde_delta = parse_z(h.at("tilde_delta"));
    r.f_enclosure = h.at("f_enclosure").get<std::string>();
    r.superlinear = h.at("superlinear").get<bool>();
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const auto type = lines[k].at("type").get<std::string>();
      if (type == "n_l") {
        r.nl_records.push_back(parse_nl(lines[k]));
      } else if (type == "check") {
        r.check_records.push_back(parse_check(lines[k]));
      } else {
        throw ParseError("unknown record type '" + type + "'");
      }
    }
    return r;
  });
}

VerifyReport verify_certificate(const Certificate& c, const VerifyOptions& opts) {
  VerifyReport rep;
  auto problem = [&](std::string s) {
    rep.ok = false;
    rep.problems.push_back(std::move(s));
  };

  if (c.mode != ArithmeticMode::Rigorous) problem("only rigorous-mode runs certify anything");
  std::optional<BoundParams> pp;
  try {
    pp = make_params(c.alpha, c.beta);
  } catch (const InvalidParams& e) {
    problem(e.what());
    return rep;
  }
  const BoundParams& p = *pp;
  if (c.l < 3) problem("l below 3");
  if (c.superlinear != check_superlinearity(p, c.l)) problem("superlinearity flag does not match");
  if (!c.superlinear) problem("f(l, n) is not superlinear, so Step 0 has no n_L");

  // Threshold.
  if (c.d_ab < 2) {
    problem("d_ab below 2");
  } else if (!c.sturm) {
    problem("missing Sturm certificate");
  } else {
    if (!(c.sturm->polynomial == build_claim1_polynomial(p))) problem("Sturm certificate is for a different polynomial");
    if (c.sturm->threshold != exponent_base(p, c.d_ab)) problem("Sturm threshold does not match d_ab");
    if (!check_sturm_certificate(*c.sturm)) problem("Sturm chain does not re-check");
    if (!c.sturm->valid()) problem("Sturm certificate leaves a root above the threshold");
    if (!verify_claim1_pointwise(p, c.d_ab)) problem("claim-1 inequality fails at d_ab");
  }

  // Step bookkeeping.
  const auto d_max = static_cast<std::int64_t>(p.inductive_offset());
  const std::uint64_t cap = p.inductive_offset();
  std::map<std::int64_t, std::uint64_t> n_L;
  for (const auto& r : c.nl_records) {
    n_L[r.d] = r.n_L;
    if (!r.crossing_margin_ok) problem("n_L(" + str(r.d) + ") has no crossing margin");
    if (!crossing_margin_holds(p, r.d, r.n_L, opts.compare)) {
      problem("crossing margin at n_L(" + str(r.d) + ") does not re-check");
    }
  }
  std::vector<CheckRecord> expected;
  const auto nl_or_zero = [&](std::int64_t d) { return n_L.count(d) ? n_L[d] : 0; };
  expected.push_back({Step::B0, c.l, static_cast<std::uint64_t>(c.l), nl_or_zero(c.l) - 1,
                      nl_or_zero(c.l) - static_cast<std::uint64_t>(c.l), true, 0});
  for (std::int64_t d = c.l + 1; d < c.d_ab; ++d) {
    const auto lo = 2 * static_cast<std::uint64_t>(d);
    expected.push_back({Step::B1, d, lo, nl_or_zero(d) - 1, nl_or_zero(d) - lo, true, 0});
  }
  std::int64_t b2_to = d_max - 1;
  if (c.b2_max_d) b2_to = std::min(b2_to, *c.b2_max_d);
  for (std::int64_t d = std::max(c.l + 1, c.d_ab); d <= b2_to; ++d) {
    const auto ud = static_cast<std::uint64_t>(d);
    expected.push_back({Step::B2, d, 2 * ud, ud + cap - 1, cap - ud, true, 0});
  }
  if (n_L.size() != static_cast<std::size_t>(std::max<std::int64_t>(1, c.d_ab - c.l))) {
    problem("expected one n_L record for d = l and each Step 1 dimension");
  }
  for (const auto& [d, v] : n_L) {
    if (d != c.l && (d <= c.l || d >= c.d_ab)) problem("unexpected n_L record for d = " + str(d));
    const std::uint64_t floor_n = d == c.l ? static_cast<std::uint64_t>(d) : 2 * static_cast<std::uint64_t>(d);
    if (v < floor_n) problem("n_L(" + str(d) + ") below the scan start");
  }
  if (c.check_records != expected) problem("check records do not match the step ranges");

  // Comparisons.
  std::set<std::pair<std::int64_t, std::size_t>> wanted;
  std::map<std::pair<std::int64_t, std::uint64_t>, int> tilde_seen;
  std::set<std::pair<std::int64_t, std::uint64_t>> larman_seen;
  CompareOptions no_filter = opts.compare;
  no_filter.use_float_filter = false;
  for (const auto& r : c.comparisons) {
    const std::string at = "(" + str(r.d) + "," + str(r.n) + ")";
    if (r.d < 3 || r.n < static_cast<std::uint64_t>(r.d) || r.m != r.n - static_cast<std::uint64_t>(r.d) ||
        r.q != exponent_base(p, r.d)) {
      problem("comparison " + at + " does not match f's arguments");
      continue;
    }
    ComparisonOutcome o;
    try {
      o = compare_int_vs_power(r.V, r.m, r.q, no_filter);
    } catch (const Undecidable& e) {
      problem("comparison " + at + " undecidable on replay: " + e.what());
      continue;
    }
    ++rep.comparisons_replayed;
    if (o != r.outcome) problem("comparison " + at + " replays as " + to_string(o));
    if (r.kind == ComparisonKind::LarmanVsBound) {
      if (r.V != larman_value(r.d, r.n).value) problem("Larman value wrong at " + at);
      const bool is_crossing = n_L.count(r.d) && n_L[r.d] == r.n;
      if (is_crossing != at_most(o)) problem("Larman comparison at " + at + " contradicts n_L");
      larman_seen.insert({r.d, r.n});
    } else {
      if (!at_most(o)) problem("tilde exceeds f at " + at);
      ++tilde_seen[{r.d, r.n}];
      if (opts.recompute) wanted.insert({r.d, r.n - static_cast<std::uint64_t>(r.d)});
    }
  }
  for (const auto& [d, v] : n_L) {
    if (!larman_seen.count({d, v})) problem("no recorded Larman comparison at n_L(" + str(d) + ")");
  }
  if (c.record_level == RecordLevel::All) {
    std::uint64_t expected_pairs = 0;
    for (const auto& e : expected) expected_pairs += e.pairs_checked;
    bool covered = tilde_seen.size() == expected_pairs;
    for (const auto& e : expected) {
      for (std::uint64_t n = e.n_lo; covered && n <= e.n_hi && e.pairs_checked > 0; ++n) {
        covered = tilde_seen.count({e.d, n}) == 1 && tilde_seen[{e.d, n}] == 1;
      }
    }
    if (!covered) problem("record level 'all' but the comparisons do not cover every checked pair exactly once");
  }

  if (opts.recompute) {
    const auto values = recompute_values(wanted);
    for (const auto& r : c.comparisons) {
      if (r.kind != ComparisonKind::TildeVsBound || r.d < 3) continue;
      const auto it = values.find({r.d, r.n - static_cast<std::uint64_t>(r.d)});
      if (it == values.end()) continue;
      ++rep.values_recomputed;
      if (it->second != r.V) problem("recorded tilde value wrong at (" + str(r.d) + "," + str(r.n) + ")");
    }
  }
  return rep;
}

}  // namespace diamcert
