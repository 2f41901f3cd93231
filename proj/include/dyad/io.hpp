#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyad/blocks.hpp"
#include "dyad/ccghc.hpp"
#include "dyad/pipeline.hpp"
#include "dyad/pmf.hpp"
#include "dyad/simplex.hpp"

namespace dyad {

using Json = nlohmann::json;

// Pmfs and cost vectors are stored as JSON arrays of decimal strings
// ("0.18") or fractions ("1/3"); plain JSON numbers are accepted on input.

std::vector<Rational> rationals_from_json(const Json& j);
Pmf pmf_from_json(const Json& j);
CostVector costs_from_json(const Json& j);
Json to_json(const Pmf& p);
Json to_json(const CostVector& w);

Pmf load_pmf(const std::string& path);
CostVector load_costs(const std::string& path);

/// Shortest decimal that reads back as the same double.
std::string format_double(double x);

Json to_json(const CcGhcResult& r);
Json to_json(const TiltedSolution& s);
Json to_json(const FrequencyStats& s);

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);
void write_sweep_csv(std::ostream& out, std::span<const ConvergenceRecord> sweep);

}  // namespace dyad
