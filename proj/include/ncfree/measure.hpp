#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncfree/errors.hpp"
#include "ncfree/rational.hpp"
#include "ncfree/sequences.hpp"

namespace ncfree {

// How a measure's data sequence is to be read.
enum class DataKind { moments, free_cumulants, boolean_cumulants };

inline std::string data_kind_name(DataKind k) {
  switch (k) {
    case DataKind::moments: return "moments";
    case DataKind::free_cumulants: return "free";
    case DataKind::boolean_cumulants: return "boolean";
  }
  return "?";
}

inline DataKind data_kind_from_name(const std::string& s) {
  if (s == "moments") return DataKind::moments;
  if (s == "free") return DataKind::free_cumulants;
  if (s == "boolean") return DataKind::boolean_cumulants;
  throw parse_error("unknown flavor '" + s + "' (expected free|boolean|moments)");
}

// A compactly supported probability law given as a finite exact-rational
// sequence (moments, free cumulants, or Boolean cumulants), plus
// optional declared metadata. Sequences are taken at face value; no
// moment-problem positivity check is attempted here.
class MeasureSpec {
public:
  MeasureSpec(DataKind kind, std::vector<Rat> values)
      : kind_(kind), values_(std::move(values)) {
    if (values_.empty()) throw domain_error("MeasureSpec: empty sequence");
    validate_declared();
  }

  static MeasureSpec from_moments(std::vector<Rat> m) {
    return MeasureSpec(DataKind::moments, std::move(m));
  }
  static MeasureSpec from_free_cumulants(std::vector<Rat> k) {
    return MeasureSpec(DataKind::free_cumulants, std::move(k));
  }
  static MeasureSpec from_boolean_cumulants(std::vector<Rat> b) {
    return MeasureSpec(DataKind::boolean_cumulants, std::move(b));
  }

  DataKind kind() const { return kind_; }
  int order() const { return static_cast<int>(values_.size()); }
  const std::vector<Rat>& raw_values() const { return values_; }

  const std::string& name() const { return name_; }
  MeasureSpec& set_name(std::string n) {
    name_ = std::move(n);
    return *this;
  }

  const std::optional<Rat>& support_bound() const { return support_bound_; }
  MeasureSpec& set_support_bound(Rat L) {
    if (L <= 0) throw domain_error("MeasureSpec: support bound must be positive");
    support_bound_ = std::move(L);
    return *this;
  }

  const std::optional<Rat>& declared_mean() const { return mean_; }
  const std::optional<Rat>& declared_variance() const { return variance_; }
  MeasureSpec& set_declared_mean(Rat m) {
    mean_ = std::move(m);
    validate_declared();
    return *this;
  }
  MeasureSpec& set_declared_variance(Rat v) {
    variance_ = std::move(v);
    validate_declared();
    return *this;
  }

  MomentSequence moments(int N) const {
    require_order(N);
    switch (kind_) {
      case DataKind::moments: return MomentSequence(prefix(N));
      case DataKind::free_cumulants:
        return moments_from_free_cumulants(CumulantSequence(Flavor::free, prefix(N)));
      case DataKind::boolean_cumulants:
        return moments_from_boolean_cumulants(CumulantSequence(Flavor::boolean, prefix(N)));
    }
    throw std::logic_error("MeasureSpec: bad kind");
  }

  CumulantSequence free_cumulants(int N) const {
    require_order(N);
    if (kind_ == DataKind::free_cumulants) return CumulantSequence(Flavor::free, prefix(N));
    return free_cumulants_from_moments(moments(N));
  }

  CumulantSequence boolean_cumulants(int N) const {
    require_order(N);
    if (kind_ == DataKind::boolean_cumulants)
      return CumulantSequence(Flavor::boolean, prefix(N));
    return boolean_cumulants_from_moments(moments(N));
  }

  // m_1; needs order >= 1 (always true).
  Rat mean_value() const { return moments(1).at(1); }

  // m_2 - m_1^2; needs order >= 2.
  Rat variance_value() const {
    auto m = moments(2);
    return m.at(2) - m.at(1) * m.at(1);
  }

  friend bool operator==(const MeasureSpec& a, const MeasureSpec& b) {
    return a.kind_ == b.kind_ && a.values_ == b.values_ && a.name_ == b.name_ &&
           a.support_bound_ == b.support_bound_ && a.mean_ == b.mean_ &&
           a.variance_ == b.variance_;
  }

private:
  std::vector<Rat> prefix(int N) const {
    return std::vector<Rat>(values_.begin(), values_.begin() + N);
  }

  void require_order(int N) const {
    if (N < 1) throw domain_error("MeasureSpec: order must be positive");
    if (N > order())
      throw truncation_error("MeasureSpec '" + name_ + "': order " + std::to_string(N) +
                             " requested but only " + std::to_string(order()) +
                             " values are present");
  }

  void validate_declared() const {
    // For every data kind the first two entries pin down mean/variance:
    // kappa_1 = b_1 = m_1 and kappa_2 = b_2 = m_2 - m_1^2.
    if (mean_ && *mean_ != values_[0])
      throw domain_error("MeasureSpec '" + name_ + "': declared mean " +
                         format_rational(*mean_) + " != " + format_rational(values_[0]));
    if (variance_) {
      if (order() < 2)
        throw domain_error("MeasureSpec '" + name_ + "': variance declared but order < 2");
      Rat v = kind_ == DataKind::moments ? values_[1] - values_[0] * values_[0] : values_[1];
      if (*variance_ != v)
        throw domain_error("MeasureSpec '" + name_ + "': declared variance " +
                           format_rational(*variance_) + " != " + format_rational(v));
    }
  }

  DataKind kind_;
  std::vector<Rat> values_;
  std::string name_;
  std::optional<Rat> support_bound_;
  std::optional<Rat> mean_;
  std::optional<Rat> variance_;
};

} // namespace ncfree
