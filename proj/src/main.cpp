// Command-line interface for the exclusion-process duality engine.
//
// Subcommands:
//   verify        run the configured check suite (exit 0 only if all pass)
//   steady-state  compare steady-state constructions for one rate tuple
//   correlate     compare direct and dual correlator routes
//   spectrum      compare the spectra of the driven and dual generators
//   compose-check composite transducer identities for rate tuples sharing sums
//
// Exit codes: 0 success, 1 at least one check failed, 2 usage/config error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ssepdual/checks.hpp"
#include "ssepdual/observables.hpp"
#include "ssepdual/report_io.hpp"

namespace {

using namespace ssepdual;

BoundaryRates<double> parse_rates(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      vals.push_back(std::stod(tok, &pos));
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("could not parse rate entry '" + tok + "' in '" + text + "'");
    }
  }
  if (vals.size() != 4)
    throw ConfigError("expected four comma-separated rates, got '" + text + "'");
  BoundaryRates<double> r{vals[0], vals[1], vals[2], vals[3]};
  r.validate();
  return r;
}

std::vector<long> parse_sites(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw ConfigError("could not parse site index '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("no site indices given");
  return out;
}

std::vector<Variant> parse_variants(const std::string& text) {
  if (text == "yr") return {Variant::YR};
  if (text == "yl") return {Variant::YL};
  if (text == "both") return {Variant::YR, Variant::YL};
  throw ConfigError("unknown variant '" + text + "' (expected yr, yl, or both)");
}

void apply_config_kv(SuiteConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "random_rate_sets") cfg.random_rate_sets = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "n_min") cfg.n_min = std::stol(value);
    else if (key == "n_max") cfg.n_max = std::stol(value);
    else if (key == "variants") cfg.variants = parse_variants(value);
    else if (key == "rates") cfg.explicit_rates.push_back(parse_rates(value));
    else if (key.rfind("tol.", 0) == 0)
      cfg.tolerance_overrides[key.substr(4)] = std::stod(value);
    else throw ConfigError("unknown configuration key '" + key + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad value '" + value + "' for configuration key '" + key + "'");
  }
}

SuiteConfig load_config(const std::string& path) {
  SuiteConfig cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("configuration file is not valid JSON: ") + e.what());
    }
    if (j.contains("random_rate_sets")) cfg.random_rate_sets = j["random_rate_sets"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n_min")) cfg.n_min = j["n_min"].get<long>();
    if (j.contains("n_max")) cfg.n_max = j["n_max"].get<long>();
    if (j.contains("variants")) cfg.variants = parse_variants(j["variants"].get<std::string>());
    if (j.contains("rates"))
      for (const auto& r : j["rates"]) cfg.explicit_rates.push_back(parse_rates(r.get<std::string>()));
    if (j.contains("tolerances"))
      for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
        cfg.tolerance_overrides[it.key()] = it.value().get<double>();
    return cfg;
  }
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError("configuration line without '=': '" + line + "'");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_config_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void emit_reports(const std::vector<CheckReport>& reports, const std::string& out_path,
                  const std::string& format) {
  write_text(std::cout, reports);
  if (out_path.empty()) return;
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
  if (format == "json") write_json(out, reports);
  else write_csv(out, reports);
}

int run_verify(const SuiteConfig& cfg, const std::string& mode, const std::string& out_path,
               const std::string& format) {
  std::vector<CheckReport> reports;
  if (mode == "exact") {
    std::vector<BoundaryRates<double>> rate_sets = cfg.explicit_rates;
    RateSampler sampler(cfg.seed);
    for (int i = 0; i < cfg.random_rate_sets; ++i) rate_sets.push_back(sampler.next());
    const long n_hi = std::min(cfg.n_max, 3L);
    for (const auto& rd : rate_sets) {
      const std::string rs = rates_to_string(rd);
      const auto rq = to_rational(rd);
      auto record = [&](const std::string& name, long N, bool ok, const std::string& details) {
        reports.push_back(CheckReport::make(
            name, N, rs, ok ? 0.0 : std::numeric_limits<double>::infinity(), 0.0, details));
      };
      for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
        const bool negate = dir == Direction::EtoNE;
        const AuxWindow window = detail::pole_free_window(rd, negate, 4);
        record(std::string("exact_rep_algebra_") + to_string(dir), 0,
               exact_rep_algebra(rq, negate, window), "defect identically zero over rationals");
        for (Variant variant : cfg.variants) {
          record(std::string("exact_bulk_exchange_") + to_string(dir) + "_" + to_string(variant),
                 0, exact_bulk_exchange(rq, dir, variant, window),
                 "defect identically zero over rationals");
          record(
              std::string("exact_boundary_exchange_") + to_string(dir) + "_" + to_string(variant),
              0, exact_boundary_exchange(rq, dir, variant, window),
              "defect identically zero over rationals");
          for (long N = 1; N <= n_hi; ++N)
            record(std::string("exact_intertwining_") + to_string(dir) + "_" + to_string(variant),
                   N, exact_intertwining(rq, N, dir, variant),
                   "defect identically zero over rationals");
        }
      }
      for (Variant variant : cfg.variants)
        record(std::string("exact_dual_equilibrium_") + to_string(variant), 0,
               exact_dual_equilibrium(rq, variant), "equilibrium condition exact");
    }
  } else if (mode == "float") {
    reports = run_suite(cfg);
  } else {
    throw ConfigError("unknown mode '" + mode + "' (expected float or exact)");
  }
  emit_reports(reports, out_path, format);
  for (const auto& r : reports)
    if (!r.passed) return 1;
  return 0;
}

int run_steady_state(const BoundaryRates<double>& rates, long N, Variant variant) {
  const Mat<double> H = nonequilibrium_H(rates, N);
  const auto oracle = oracle_steady_state(H);
  const auto mps = build_dehp_mps(rates, N);
  const auto dual = build_dual_rates(rates, variant);
  const auto bern = build_bernoulli(dual.equivalent, N);
  const auto mapped = map_through(build_G(rates, N, variant), bern);
  auto print_state = [&](const std::string& label, const Vec<double>& v) {
    std::cout << label << ":";
    for (long i = 0; i < v.rows(); ++i) std::cout << " " << format_double(v(i));
    std::cout << "\n";
  };
  std::cout << "rates " << rates_to_string(rates) << ", N=" << N << ", variant "
            << to_string(variant) << "\n";
  print_state("kernel-oracle steady state     ", oracle.vector);
  print_state("product-form steady state      ", mps.vector);
  print_state("transduced Bernoulli (dual)    ", mapped.state.vector);
  const double a_mps = angle_between(mps.vector, oracle.vector);
  const double a_map = angle_between(mapped.state.vector, oracle.vector);
  const double a_xx = angle_between(mps.vector, mapped.state.vector);
  std::cout << "angle(product-form, oracle)  = " << format_double(a_mps) << "\n";
  std::cout << "angle(transduced, oracle)    = " << format_double(a_map) << "\n";
  std::cout << "angle(product-form, transduced) = " << format_double(a_xx) << "\n";
  std::cout << "transduced scale = " << format_double(mapped.scale) << ", product-form norm = "
            << format_double(mps.normalization) << "\n";
  const bool ok = std::max({a_mps, a_map, a_xx}) <= tol::steady_angle;
  std::cout << (ok ? "PASS" : "FAIL") << " steady-state agreement (tolerance "
            << format_double(tol::steady_angle) << ")\n";
  return ok ? 0 : 1;
}

int run_correlate(const BoundaryRates<double>& rates, long N, const std::vector<long>& sites,
                  Variant variant) {
  CorrelatorSpec spec{sites};
  spec.validate(N);
  const double direct = correlate_direct(rates, N, spec);
  const double dual_scaled = correlate_dual(rates, N, spec, variant, XConvention::XTimesYinv);
  const double dual_raw = correlate_dual(rates, N, spec, variant, XConvention::XRaw);
  std::cout << "rates " << rates_to_string(rates) << ", N=" << N << ", sites";
  for (long s : sites) std::cout << " " << s;
  std::cout << ", variant " << to_string(variant) << "\n";
  std::cout << "direct steady-state correlator          = " << format_double(direct) << "\n";
  std::cout << "dual route (scaled insertion)           = " << format_double(dual_scaled) << "\n";
  std::cout << "dual route (raw insertion, diagnostic)  = " << format_double(dual_raw) << "\n";
  const double resid = std::abs(dual_scaled - direct) / std::max(1.0, std::abs(direct));
  std::cout << "recorded convention: " << to_string(XConvention::XTimesYinv)
            << ", residual = " << format_double(resid) << "\n";
  const bool ok = resid <= tol::correlator;
  std::cout << (ok ? "PASS" : "FAIL") << " correlator duality (tolerance "
            << format_double(tol::correlator) << ")\n";
  return ok ? 0 : 1;
}

int run_spectrum(const BoundaryRates<double>& rates, long N, Variant variant) {
  const auto report = check_spectra(rates, N, variant);
  const Mat<double> H_ne = nonequilibrium_H(rates, N);
  const Mat<double> H_eq = equilibrium_H(rates, N, variant);
  Eigen::EigenSolver<Mat<double>> sa(H_ne), sb(H_eq);
  std::vector<std::complex<double>> ea, eb;
  for (long i = 0; i < sa.eigenvalues().size(); ++i) ea.push_back(sa.eigenvalues()(i));
  for (long i = 0; i < sb.eigenvalues().size(); ++i) eb.push_back(sb.eigenvalues()(i));
  auto lex = [](const std::complex<double>& x, const std::complex<double>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  std::sort(ea.begin(), ea.end(), lex);
  std::sort(eb.begin(), eb.end(), lex);
  std::cout << "rates " << rates_to_string(rates) << ", N=" << N << ", variant "
            << to_string(variant) << "\n";
  std::cout << "driven spectrum | dual-equilibrium spectrum\n";
  for (std::size_t i = 0; i < ea.size(); ++i) {
    std::cout << format_double(ea[i].real());
    if (ea[i].imag() != 0) std::cout << (ea[i].imag() > 0 ? "+" : "") << format_double(ea[i].imag()) << "i";
    std::cout << " | " << format_double(eb[i].real());
    if (eb[i].imag() != 0) std::cout << (eb[i].imag() > 0 ? "+" : "") << format_double(eb[i].imag()) << "i";
    std::cout << "\n";
  }
  std::cout << "max sorted mismatch (relative) = " << format_double(report.residual) << "\n";
  std::cout << (report.passed ? "PASS" : "FAIL") << " isospectrality (tolerance "
            << format_double(report.tolerance) << ")\n";
  return report.passed ? 0 : 1;
}

int run_compose_check(const BoundaryRates<double>& a, const BoundaryRates<double>& b,
                      const std::optional<BoundaryRates<double>>& c, long N, Variant variant) {
  std::vector<CheckReport> reports;
  reports.push_back(check_composite_intertwining(a, b, N, variant));
  if (c) reports.push_back(check_closure(a, b, *c, N, variant));
  write_text(std::cout, reports);
  for (const auto& r : reports)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transducer-based duality engine for the boundary-driven exclusion process"};
  app.require_subcommand(1);

  std::string config_path, rates_str, rates_a_str, rates_b_str, rates_c_str;
  std::string sites_str, variant_str = "yr", mode = "float", out_path, format = "csv";
  long N = 3;
  std::uint64_t seed = 0;
  int random_sets = -1;

  auto* verify = app.add_subcommand("verify", "Run the check suite");
  verify->add_option("--config", config_path, "Configuration file (JSON or key=value lines)");
  verify->add_option("--rates", rates_str, "Explicit rate tuple a,b,g,d to include");
  verify->add_option("--n", N, "Largest system size")->check(CLI::Range(1L, 10L));
  verify->add_option("--variant", variant_str, "Transducer variant: yr, yl, or both");
  verify->add_option("--mode", mode, "Arithmetic mode: float or exact");
  verify->add_option("--out", out_path, "Write the report table to this file");
  verify->add_option("--format", format, "Report file format: csv or json");
  verify->add_option("--seed", seed, "Random-rate seed");
  verify->add_option("--random-rate-sets", random_sets, "Number of random rate tuples");

  auto* steady = app.add_subcommand("steady-state", "Steady-state comparison");
  steady->add_option("--rates", rates_str, "Rate tuple a,b,g,d")->required();
  steady->add_option("--n", N, "System size")->check(CLI::Range(1L, 10L));
  steady->add_option("--variant", variant_str, "Transducer variant: yr or yl");

  auto* corr = app.add_subcommand("correlate", "Correlator duality comparison");
  corr->add_option("--rates", rates_str, "Rate tuple a,b,g,d")->required();
  corr->add_option("--n", N, "System size")->check(CLI::Range(1L, 10L));
  corr->add_option("--sites", sites_str, "Comma-separated occupation sites")->required();
  corr->add_option("--variant", variant_str, "Transducer variant: yr or yl");

  auto* spec = app.add_subcommand("spectrum", "Spectra of driven and dual generators");
  spec->add_option("--rates", rates_str, "Rate tuple a,b,g,d")->required();
  spec->add_option("--n", N, "System size")->check(CLI::Range(1L, 10L));
  spec->add_option("--variant", variant_str, "Transducer variant: yr or yl");

  auto* comp = app.add_subcommand("compose-check", "Composite transducer identities");
  comp->add_option("--rates-a", rates_a_str, "First rate tuple")->required();
  comp->add_option("--rates-b", rates_b_str, "Second rate tuple (same boundary sums)")->required();
  comp->add_option("--rates-c", rates_c_str, "Optional third rate tuple for the chain check");
  comp->add_option("--n", N, "System size")->check(CLI::Range(1L, 8L));
  comp->add_option("--variant", variant_str, "Transducer variant: yr or yl");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) {
      SuiteConfig cfg;
      if (!config_path.empty()) cfg = load_config(config_path);
      if (!rates_str.empty()) cfg.explicit_rates.push_back(parse_rates(rates_str));
      if (verify->count("--n")) cfg.n_max = N;
      if (verify->count("--variant")) cfg.variants = parse_variants(variant_str);
      if (verify->count("--seed")) cfg.seed = seed;
      if (random_sets >= 0) cfg.random_rate_sets = random_sets;
      if (format != "csv" && format != "json")
        throw ConfigError("unknown format '" + format + "' (expected csv or json)");
      return run_verify(cfg, mode, out_path, format);
    }
    const auto one_variant = [&]() {
      const auto v = parse_variants(variant_str);
      if (v.size() != 1)
        throw ConfigError("this subcommand needs a single variant (yr or yl)");
      return v[0];
    };
    if (app.got_subcommand(steady))
      return run_steady_state(parse_rates(rates_str), N, one_variant());
    if (app.got_subcommand(corr))
      return run_correlate(parse_rates(rates_str), N, parse_sites(sites_str), one_variant());
    if (app.got_subcommand(spec)) return run_spectrum(parse_rates(rates_str), N, one_variant());
    if (app.got_subcommand(comp)) {
      std::optional<BoundaryRates<double>> c;
      if (!rates_c_str.empty()) c = parse_rates(rates_c_str);
      return run_compose_check(parse_rates(rates_a_str), parse_rates(rates_b_str), c, N,
                               one_variant());
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const IndexError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
