#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncfree/bounds.hpp"
#include "ncfree/enumerate.hpp"
#include "ncfree/errors.hpp"
#include "ncfree/measure.hpp"
#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"

namespace ncfree {

using json = nlohmann::json;

// Rationals travel as strings ("p/q" or integer or decimal) so no value
// is ever truncated; integers are also accepted on input.
inline Rat rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  throw parse_error("expected a rational as string, got " + j.dump());
}

inline json partition_to_json(const NoncrossingPartition& p) {
  json out = json::array();
  for (const auto& b : p.blocks()) out.push_back(b);
  return out;
}

inline NoncrossingPartition partition_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("partition JSON must be an array of arrays");
  Blocks blocks;
  int count = 0;
  for (const auto& jb : j) {
    if (!jb.is_array()) throw parse_error("partition JSON must be an array of arrays");
    std::vector<int> b;
    for (const auto& e : jb) {
      if (!e.is_number_integer()) throw parse_error("partition elements must be integers");
      b.push_back(e.get<int>());
      ++count;
    }
    blocks.push_back(std::move(b));
  }
  return NoncrossingPartition(count, std::move(blocks));
}

inline json measure_spec_to_json(const MeasureSpec& spec) {
  json out;
  out["flavor"] = data_kind_name(spec.kind());
  json values = json::array();
  for (const auto& v : spec.raw_values()) values.push_back(format_rational(v));
  out["values"] = std::move(values);
  if (!spec.name().empty()) out["name"] = spec.name();
  if (spec.support_bound()) out["L"] = format_rational(*spec.support_bound());
  if (spec.declared_mean()) out["mean"] = format_rational(*spec.declared_mean());
  if (spec.declared_variance()) out["variance"] = format_rational(*spec.declared_variance());
  return out;
}

inline MeasureSpec measure_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("flavor") || !j.contains("values"))
    throw parse_error("measure spec needs 'flavor' and 'values'");
  DataKind kind = data_kind_from_name(j.at("flavor").get<std::string>());
  std::vector<Rat> values;
  for (const auto& v : j.at("values")) values.push_back(rational_from_json(v));
  MeasureSpec spec(kind, std::move(values));
  if (j.contains("name")) spec.set_name(j.at("name").get<std::string>());
  if (j.contains("L")) spec.set_support_bound(rational_from_json(j.at("L")));
  if (j.contains("mean")) spec.set_declared_mean(rational_from_json(j.at("mean")));
  if (j.contains("variance")) spec.set_declared_variance(rational_from_json(j.at("variance")));
  return spec;
}

inline json bound_certificate_to_json(const BoundCertificate& c) {
  json out;
  out["k"] = c.k;
  out["L"] = format_rational(c.L);
  out["sigma2"] = format_rational(c.sigma2);
  out["lower"] = format_rational(c.lower);
  out["upper"] = format_rational(c.upper);
  out["constant"] = format_rational(c.constant);
  out["constant_kind"] = c.constant_kind;
  out["nonneg_cumulants"] = c.nonneg_cumulants;
  return out;
}

inline BoundCertificate bound_certificate_from_json(const json& j) {
  BoundCertificate c;
  c.k = j.at("k").get<int>();
  c.L = rational_from_json(j.at("L"));
  c.sigma2 = rational_from_json(j.at("sigma2"));
  c.lower = rational_from_json(j.at("lower"));
  c.upper = rational_from_json(j.at("upper"));
  c.constant = rational_from_json(j.at("constant"));
  c.constant_kind = j.at("constant_kind").get<std::string>();
  c.nonneg_cumulants = j.at("nonneg_cumulants").get<bool>();
  return c;
}

} // namespace ncfree
