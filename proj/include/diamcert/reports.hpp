#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "diamcert/bounds.hpp"
#include "diamcert/checker.hpp"
#include "diamcert/claim1.hpp"

namespace diamcert {

/// CSV "n,f,tilde_delta,larman" for n = d..n_max. f is the midpoint of a
/// certified enclosure with `decimals` digits; the integer columns are exact.
/// Requires 3 <= d <= n_max.
void write_figure_csv(std::ostream& out, const BoundParams& p, std::int64_t d, std::uint64_t n_max, int decimals = 6);

/// Human-readable threshold summary: d_ab, D0, polynomial in d, Sturm counts.
std::string dab_summary(const BoundParams& p, const DabResult& r);

/// One line per attempted l: the failing pair, or why it was skipped.
std::string attempts_summary(const AutoLResult& r);

}  // namespace diamcert
