#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncfree/bounds.hpp"
#include "ncfree/convolution.hpp"
#include "ncfree/enumerate.hpp"
#include "ncfree/json_io.hpp"
#include "ncfree/laws.hpp"
#include "ncfree/measure.hpp"
#include "ncfree/partition.hpp"
#include "ncfree/selftest.hpp"

namespace ncfree::cli {

// Stream enumeration past this ground-set size needs --unsafe-ceiling.
inline constexpr int kStreamCeiling = 14;

namespace detail {

inline std::string error_line(const std::string& kind, const std::string& msg) {
  json j;
  j["error"] = msg;
  j["kind"] = kind;
  return j.dump();
}

inline unsigned digits_from_env() {
  if (const char* env = std::getenv("NCFREE_DIGITS")) {
    int d = std::atoi(env);
    if (d >= 1 && d <= 60) return static_cast<unsigned>(d);
    throw domain_error("NCFREE_DIGITS must be an integer in 1..60");
  }
  return 12;
}

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  return out;
}

inline std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const auto& tok : split_csv(s)) out.push_back(parse_rational(tok));
  return out;
}

inline std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  for (const auto& tok : split_csv(s)) out.push_back(std::stol(tok));
  return out;
}

// Multiplicity list "r_1,r_2,..."; trailing zeros may be omitted.
inline TypeVector parse_type(int n, const std::string& s) {
  return TypeVector::validated(n, parse_long_list(s));
}

inline json load_json(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error("bad JSON in '" + path + "': " + e.what());
  }
}

inline MeasureSpec load_spec(const std::string& path, std::istream& in) {
  return measure_spec_from_json(load_json(path, in));
}

inline NamedLaw law_from_options(const std::string& name, const std::string& params_csv) {
  std::vector<Rat> p = params_csv.empty() ? std::vector<Rat>{} : parse_rat_list(params_csv);
  auto need = [&](std::size_t want) {
    if (p.size() != want)
      throw domain_error("law '" + name + "' takes " + std::to_string(want) +
                         " parameter(s), got " + std::to_string(p.size()));
  };
  if (name == "free-poisson") {
    need(0);
    return NamedLaw::free_poisson();
  }
  if (name == "shifted-semicircle") {
    need(1);
    return NamedLaw::shifted_semicircle(p[0]);
  }
  if (name == "point-mass") {
    need(1);
    return NamedLaw::point_mass(p[0]);
  }
  if (name == "two-point") {
    if (p.size() == 1) return NamedLaw::two_point_zero(p[0]);
    need(4);
    return NamedLaw::two_point(p[0], p[1], p[2], p[3]);
  }
  if (name == "sakuma-h") {
    need(1);
    return NamedLaw::sakuma_h(p[0]);
  }
  if (name == "sakuma-s") {
    need(1);
    return NamedLaw::sakuma_s(p[0]);
  }
  throw domain_error("unknown law '" + name + "'");
}

// --law/--params or --in, materialized at `order`.
inline MeasureSpec spec_from_source(const std::string& law, const std::string& params,
                                    const std::string& in_path, int order, std::istream& in) {
  if (!law.empty() && !in_path.empty())
    throw domain_error("give either --law or --in, not both");
  if (!law.empty()) return law_from_options(law, params).materialize(order);
  if (!in_path.empty()) return load_spec(in_path, in);
  throw domain_error("a measure is required: --law NAME or --in FILE");
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw parse_error("cannot open '" + path + "' for writing");
  f << text;
}

} // namespace detail

// Front end behind the binary. Returns the process exit code: 0 success,
// 1 domain/resource error (one JSON line on err), 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
  CLI::App app{"exact non-crossing-partition combinatorics and free multiplicative convolution"};
  app.name("ncfree");
  app.require_subcommand(1);

  // count
  auto* count_cmd = app.add_subcommand("count", "closed-form family counts");
  std::string count_family;
  int count_n = 0, count_k = 1;
  std::string count_type_csv, count_kr_type_csv;
  count_cmd->add_option("--family", count_family, "nc|k-equal|k-divisible|nc21|type|pair-type")
      ->required();
  count_cmd->add_option("--n", count_n, "family size parameter")->required();
  count_cmd->add_option("--k", count_k, "block-size parameter");
  count_cmd->add_option("--type", count_type_csv, "multiplicities r_1,r_2,...");
  count_cmd->add_option("--kr-type", count_kr_type_csv, "complement multiplicities b_1,b_2,...");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "stream a partition family");
  std::string enum_family = "nc", enum_format = "text";
  int enum_n = 0, enum_k = 1, enum_ceiling = kStreamCeiling;
  enum_cmd->add_option("--family", enum_family, "nc|k-equal|k-divisible|nc21");
  enum_cmd->add_option("--n", enum_n, "family size parameter")->required();
  enum_cmd->add_option("--k", enum_k, "block-size parameter");
  enum_cmd->add_option("--format", enum_format, "text|json");
  enum_cmd->add_option("--unsafe-ceiling", enum_ceiling, "raise the enumeration ceiling");

  // kreweras
  auto* kr_cmd = app.add_subcommand("kreweras", "Kreweras complement of a partition literal");
  std::string kr_in, kr_format = "text";
  kr_cmd->add_option("--in", kr_in, "partition literal, e.g. {1,4}{2,3}")->required();
  kr_cmd->add_option("--format", kr_format, "text|json");

  // convolve
  auto* conv_cmd = app.add_subcommand("convolve", "free/Boolean convolution of measure specs");
  std::string conv_op, conv_strategy = "auto", conv_out, conv_emit = "auto";
  int conv_order = 0, conv_ceiling = kDirectConvolutionCeiling;
  std::vector<std::string> conv_inputs;
  conv_cmd->add_option("--op", conv_op, "boxtimes|boxplus|boolean")->required();
  conv_cmd->add_option("--order", conv_order, "truncation order N")->required();
  conv_cmd->add_option("--strategy", conv_strategy, "direct|iterated (default: direct when k*N fits)");
  conv_cmd->add_option("--out", conv_out, "output path (default stdout)");
  conv_cmd->add_option("--emit", conv_emit, "free|boolean|moments (default per op)");
  conv_cmd->add_option("--unsafe-ceiling", conv_ceiling, "raise the direct-mode ceiling");
  conv_cmd->add_option("--in,inputs", conv_inputs, "measure spec files ('-' for stdin)");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "support-edge certificate for a k-fold product");
  int bounds_k = 0, bounds_order = 12;
  std::string bounds_csv;
  std::vector<std::string> bounds_inputs;
  bounds_cmd->add_option("--k", bounds_k, "number of factors (default: number of inputs)");
  bounds_cmd->add_option("--order", bounds_order, "moment order for the edge table");
  bounds_cmd->add_option("--csv", bounds_csv, "write the (n, m_n^(1/n)) table here");
  bounds_cmd->add_option("--in,inputs", bounds_inputs, "measure spec files")->required();

  // limits
  auto* limits_cmd = app.add_subcommand("limits", "scaled-cumulant limit table on a k grid");
  std::string limits_law, limits_params, limits_in, limits_flavor = "free", limits_out,
              limits_kgrid = "10,20,50,100,200";
  int limits_n = 5;
  limits_cmd->add_option("--law", limits_law, "named law");
  limits_cmd->add_option("--params", limits_params, "law parameters, comma-separated rationals");
  limits_cmd->add_option("--in", limits_in, "measure spec file instead of --law");
  limits_cmd->add_option("--n", limits_n, "largest cumulant order");
  limits_cmd->add_option("--kgrid", limits_kgrid, "comma-separated k values");
  limits_cmd->add_option("--flavor", limits_flavor, "free|boolean");
  limits_cmd->add_option("--out", limits_out, "CSV output path (default stdout)");

  // positivity
  auto* pos_cmd = app.add_subcommand("positivity", "scan k for nonnegative cumulants of mu^(boxtimes k)");
  std::string pos_law, pos_params, pos_in, pos_format = "json";
  int pos_n = 4, pos_kmax = 64;
  pos_cmd->add_option("--law", pos_law, "named law");
  pos_cmd->add_option("--params", pos_params, "law parameters");
  pos_cmd->add_option("--in", pos_in, "measure spec file instead of --law");
  pos_cmd->add_option("--n", pos_n, "cumulant orders checked (1..n)");
  pos_cmd->add_option("--kmax", pos_kmax, "largest k scanned");
  pos_cmd->add_option("--format", pos_format, "json|csv");

  // selftest
  auto* self_cmd = app.add_subcommand("selftest", "run the cross-engine oracle suite");
  std::string self_fault;
  self_cmd->add_option("--inject-fault", self_fault, "perturb a named closed form (harness hook)")
      ->group(""); // hidden

  std::vector<const char*> argv;
  argv.push_back("ncfree");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << detail::error_line("usage", e.what()) << "\n";
    return 2;
  }

  try {
    if (*count_cmd) {
      Int value;
      if (count_family == "nc")
        value = count_catalan(count_n);
      else if (count_family == "k-equal")
        value = count_k_equal(count_k, count_n);
      else if (count_family == "k-divisible")
        value = count_k_divisible(count_k, count_n);
      else if (count_family == "nc21")
        value = count_nc21(count_k, count_n);
      else if (count_family == "type") {
        if (count_type_csv.empty()) throw domain_error("count --family type needs --type");
        value = count_type(detail::parse_type(count_n, count_type_csv));
      } else if (count_family == "pair-type") {
        if (count_type_csv.empty() || count_kr_type_csv.empty())
          throw domain_error("count --family pair-type needs --type and --kr-type");
        value = count_pair_type(detail::parse_type(count_n, count_type_csv),
                                detail::parse_type(count_n, count_kr_type_csv));
      } else
        throw domain_error("unknown family '" + count_family + "'");
      json j;
      j["count"] = value.str();
      out << j.dump() << "\n";
      return 0;
    }

    if (*enum_cmd) {
      auto emit = [&](const NoncrossingPartition& p) {
        if (enum_format == "json")
          out << partition_to_json(p).dump() << "\n";
        else
          out << p.to_text() << "\n";
      };
      if (enum_format != "text" && enum_format != "json")
        throw domain_error("unknown format '" + enum_format + "'");
      if (enum_family == "nc") {
        auto e = iter_nc(enum_n, enum_ceiling);
        while (auto p = e.next()) emit(*p);
      } else if (enum_family == "k-equal") {
        auto e = iter_k_equal(enum_k, enum_n, enum_ceiling);
        while (auto p = e.next()) emit(*p);
      } else if (enum_family == "k-divisible") {
        auto e = iter_k_divisible(enum_k, enum_n, enum_ceiling);
        while (auto p = e.next()) emit(*p);
      } else if (enum_family == "nc21") {
        auto e = iter_nc21(enum_k, enum_n, enum_ceiling);
        while (auto p = e.next()) emit(*p);
      } else
        throw domain_error("unknown family '" + enum_family + "'");
      return 0;
    }

    if (*kr_cmd) {
      auto p = NoncrossingPartition::parse(kr_in);
      auto kr = kreweras(p);
      if (kr_format == "json")
        out << partition_to_json(kr).dump() << "\n";
      else if (kr_format == "text")
        out << kr.to_text() << "\n";
      else
        throw domain_error("unknown format '" + kr_format + "'");
      return 0;
    }

    if (*conv_cmd) {
      if (conv_inputs.empty()) throw domain_error("convolve needs at least one input spec");
      std::vector<MeasureSpec> specs;
      for (const auto& path : conv_inputs) specs.push_back(detail::load_spec(path, in));
      int k = static_cast<int>(specs.size());

      Strategy strategy;
      if (conv_strategy == "auto")
        strategy = k * conv_order <= conv_ceiling ? Strategy::direct : Strategy::iterated;
      else
        strategy = strategy_from_name(conv_strategy);

      MeasureSpec result = MeasureSpec::from_free_cumulants({Rat(0)});
      std::string default_emit;
      if (conv_op == "boxtimes") {
        result = boxtimes_k(specs, conv_order, strategy, conv_ceiling);
        default_emit = "free";
      } else if (conv_op == "boxplus") {
        result = boxplus_k(specs, conv_order);
        default_emit = "free";
      } else if (conv_op == "boolean") {
        result = MeasureSpec::from_boolean_cumulants(
            boxtimes_k_boolean(specs, conv_order, strategy, conv_ceiling).values);
        default_emit = "boolean";
      } else
        throw domain_error("unknown op '" + conv_op + "'");

      std::string emit = conv_emit == "auto" ? default_emit : conv_emit;
      MeasureSpec emitted = result;
      if (emit == "free")
        emitted = MeasureSpec::from_free_cumulants(result.free_cumulants(conv_order).values);
      else if (emit == "boolean")
        emitted = MeasureSpec::from_boolean_cumulants(result.boolean_cumulants(conv_order).values);
      else if (emit == "moments")
        emitted = MeasureSpec::from_moments(result.moments(conv_order).values);
      else
        throw domain_error("unknown emit kind '" + emit + "'");
      detail::write_text(conv_out, measure_spec_to_json(emitted).dump() + "\n", out);
      return 0;
    }

    if (*bounds_cmd) {
      std::vector<MeasureSpec> specs;
      for (const auto& path : bounds_inputs) specs.push_back(detail::load_spec(path, in));
      int k = bounds_k > 0 ? bounds_k : static_cast<int>(specs.size());
      if (specs.size() != 1 && static_cast<int>(specs.size()) != k)
        throw domain_error("bounds: give one spec (replicated k times) or exactly k specs");

      Rat L(0), sigma2(0);
      bool nonneg = true, first = true;
      for (const auto& s : specs) {
        if (!s.support_bound())
          throw domain_error("bounds: spec '" + s.name() +
                             "' has no declared support bound L; refusing to infer one");
        if (s.mean_value() != 1)
          throw domain_error("bounds: spec '" + s.name() + "' must have mean 1");
        if (s.order() < 2) throw domain_error("bounds: specs need order >= 2 for a variance");
        Rat v = s.variance_value();
        if (first || *s.support_bound() > L) L = *s.support_bound();
        if (first || v < sigma2) sigma2 = v;
        first = false;
        for (const auto& c : s.free_cumulants(s.order()).values)
          if (c < 0) nonneg = false;
      }

      auto cert = make_bound_certificate(k, L, sigma2, nonneg);
      out << bound_certificate_to_json(cert).dump() << "\n";

      if (!bounds_csv.empty()) {
        std::vector<MeasureSpec> factors = specs;
        if (specs.size() == 1) factors.assign(static_cast<std::size_t>(k), specs[0]);
        auto product = boxtimes_k(factors, bounds_order, Strategy::iterated);
        unsigned digits = detail::digits_from_env();
        auto roots = estimate_support_edge(product, bounds_order, digits);
        std::ostringstream csv;
        csv << "n,root,decimal\n";
        for (int n = 1; n <= bounds_order; ++n) {
          const Rat& r = roots[static_cast<std::size_t>(n) - 1];
          csv << n << "," << format_rational(r) << "," << to_decimal(r, digits) << "\n";
        }
        detail::write_text(bounds_csv, csv.str(), out);
      }
      return 0;
    }

    if (*limits_cmd) {
      Flavor flavor = limits_flavor == "boolean" ? Flavor::boolean : Flavor::free;
      if (limits_flavor != "free" && limits_flavor != "boolean")
        throw domain_error("unknown flavor '" + limits_flavor + "'");
      MeasureSpec spec = detail::spec_from_source(limits_law, limits_params, limits_in, limits_n, in);
      auto grid = detail::parse_long_list(limits_kgrid);
      auto rows = sakuma_limit_table(spec, limits_n, grid, flavor);
      unsigned digits = detail::digits_from_env();
      std::ostringstream csv;
      csv << "flavor,n,k,computed,target,rel_error\n";
      for (const auto& r : rows) {
        Rat rel = r.target == 0 ? Rat(0) : (r.computed - r.target) / r.target;
        if (rel < 0) rel = -rel;
        csv << flavor_name(flavor) << "," << r.n << "," << r.k << ","
            << to_decimal(r.computed, digits) << "," << to_decimal(r.target, digits) << ","
            << to_decimal(rel, digits) << "\n";
      }
      detail::write_text(limits_out, csv.str(), out);
      return 0;
    }

    if (*pos_cmd) {
      MeasureSpec spec = detail::spec_from_source(pos_law, pos_params, pos_in, pos_n, in);
      auto scan = eventual_positivity_scan(spec, pos_n, pos_kmax);
      if (pos_format == "json") {
        json j;
        j["threshold"] = scan.threshold ? json(*scan.threshold) : json(nullptr);
        json table = json::array();
        for (std::size_t i = 0; i < scan.cumulants.size(); ++i) {
          json row;
          row["k"] = i + 1;
          json cum = json::array();
          bool nn = true;
          for (const auto& v : scan.cumulants[i]) {
            cum.push_back(format_rational(v));
            if (v < 0) nn = false;
          }
          row["cumulants"] = std::move(cum);
          row["nonneg"] = nn;
          table.push_back(std::move(row));
        }
        j["table"] = std::move(table);
        out << j.dump() << "\n";
      } else if (pos_format == "csv") {
        out << "k,nonneg";
        for (int i = 1; i <= pos_n; ++i) out << ",kappa_" << i;
        out << "\n";
        for (std::size_t i = 0; i < scan.cumulants.size(); ++i) {
          bool nn = true;
          for (const auto& v : scan.cumulants[i])
            if (v < 0) nn = false;
          out << (i + 1) << "," << (nn ? 1 : 0);
          for (const auto& v : scan.cumulants[i]) out << "," << format_rational(v);
          out << "\n";
        }
      } else
        throw domain_error("unknown format '" + pos_format + "'");
      return 0;
    }

    if (*self_cmd) {
      auto report = selftest(out, self_fault);
      out << (report.ok() ? "selftest: all " : "selftest: FAILED, ")
          << (report.ok() ? std::to_string(report.passed) + " checks passed"
                          : std::to_string(report.failed) + " of " +
                                std::to_string(report.passed + report.failed) + " checks failed")
          << "\n";
      return report.ok() ? 0 : 1;
    }
  } catch (const error& e) {
    err << detail::error_line(e.kind(), e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << detail::error_line("internal", e.what()) << "\n";
    return 1;
  }
  return 2;
}

} // namespace ncfree::cli
