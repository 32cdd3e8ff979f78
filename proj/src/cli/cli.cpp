// SPDX-License-Identifier: Apache-2.0
#include "illspec/cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <ostream>

#include "illspec/analysis/analysis.hpp"
#include "illspec/figures/figures.hpp"
#include "illspec/io/serialize.hpp"
#include "illspec/ncnc/ncnc.hpp"
#include "illspec/spectra/eigen.hpp"
#include "illspec/operators/monomial_image.hpp"
#include "illspec/util/errors.hpp"

namespace illspec::cli {
namespace {

std::string timestamp() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Writes every (relative path, text) pair under cfg.out plus a manifest.
void emit(const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& files, std::ostream& out) {
  nlohmann::json listed = nlohmann::json::array();
  for (const auto& [rel, text] : files) {
    io::write_file(cfg.out + "/" + rel, text);
    listed.push_back({{"path", rel}, {"sha256", io::sha256_hex(text)}});
    out << "wrote " << cfg.out << "/" << rel << "\n";
  }
  const nlohmann::json manifest = {{"schema_version", io::kSchemaVersion},
                                   {"config", cfg.to_json()},
                                   {"outputs", listed},
                                   {"timestamp", timestamp()}};
  io::write_file(cfg.out + "/manifest_" + cfg.command + ".json", manifest.dump(2) + "\n");
}

BigFloat series_tol(const RunConfig& cfg) {
  const mpfr_prec_t p = cfg.precision;
  if (cfg.tol.empty()) return resolution(p);
  const BigFloat t = BigFloat::parse(cfg.tol, p);
  if (!(t > 0.0)) throw ValidationError("--tol must be positive");
  return t;
}

std::string stem(const RunConfig& cfg) {
  return cfg.op + "_" + cfg.scheme + "_N" + std::to_string(cfg.n);
}

nlohmann::json gram_key(const RunConfig& cfg, Arithmetic a) {
  return {{"kind", "gram"},
          {"op", CompositionSpec::from_short_name(cfg.op).name()},
          {"scheme", cfg.scheme},
          {"N", cfg.n},
          {"precision", cfg.precision},
          {"arithmetic", static_cast<int>(a)},
          {"tol", cfg.scheme == "right" ? series_tol(cfg).to_hex() : ""}};
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw ValidationError("--n must be >= 1");
  if (cfg.precision < 53 || cfg.precision > 1 << 16) throw ValidationError("--precision must lie in [53, 65536]");
  parse_scheme(cfg.scheme);
  CompositionSpec::from_short_name(cfg.op);
}

int cmd_assemble(const RunConfig& cfg, const Cache& cache, std::ostream& out) {
  const GramMatrix g = assemble(cfg, cache);
  emit(cfg, {{"gram_" + stem(cfg) + ".json", io::gram_to_json(g).dump() + "\n"}}, out);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, const Cache& cache, std::ostream& out) {
  const Spectrum s = spectrum(cfg, cache);
  emit(cfg,
       {{"spectrum_" + stem(cfg) + ".csv", io::spectrum_csv(s)},
        {"spectrum_" + stem(cfg) + ".json", io::spectrum_to_json(s).dump(2) + "\n"}},
       out);
  out << s.size() << " singular values, sigma_1 = " << s.sigma(1).to_decimal(12) << ", trusted up to index "
      << s.trust_cutoff << "\n";
  return kExitOk;
}

int cmd_fit(const RunConfig& cfg, const Cache& cache, std::ostream& out) {
  const Spectrum s = spectrum(cfg, cache);
  std::optional<Window> w;
  if (!cfg.window.empty()) w = parse_window(cfg.window);
  nlohmann::json j = {{"operator", cfg.op}, {"scheme", cfg.scheme}, {"N", cfg.n}};
  nlohmann::json fits = nlohmann::json::array();
  for (DecayModel m : {DecayModel::Power, DecayModel::Exponential}) {
    if (cfg.model != "both" && cfg.model != to_string(m)) continue;
    const DecayFit f = fit_decay(s, m, w);
    fits.push_back(fit_to_json(f));
    out << to_string(m) << ": rate = " << f.rate << ", c = " << f.c << ", residual = " << f.residual
        << ", window = " << f.window.lo << ":" << f.window.hi << "\n";
  }
  if (fits.empty()) throw ValidationError("--model must be power, exponential or both");
  j["fits"] = std::move(fits);
  emit(cfg, {{"fit_" + stem(cfg) + ".json", j.dump(2) + "\n"}}, out);
  return kExitOk;
}

int cmd_bounds(const RunConfig& cfg, const Cache& cache, std::ostream& out) {
  const Spectrum s = spectrum(cfg, cache);
  nlohmann::json j = {{"operator", cfg.op}, {"scheme", cfg.scheme}, {"N", cfg.n}};
  nlohmann::json reports = nlohmann::json::array();
  std::vector<BoundSpec> specs;
  const CompositionSpec op = CompositionSpec::from_short_name(cfg.op);
  specs.push_back(fitted_at_first(s, {BoundForm::PowerThreeHalves, BoundDirection::Upper}));
  if (is_d_ha(op)) {
    specs.push_back(fitted_at_first(s, {BoundForm::ExpTwoOverI, BoundDirection::Lower}));
  } else if (is_ha_j(op)) {
    specs.push_back(fitted_at_first(s, {BoundForm::Exponential, BoundDirection::Lower, 1.0, 1.6}));
  }
  std::optional<Window> w;
  if (!cfg.window.empty()) w = parse_window(cfg.window);
  bool all = true;
  for (const auto& b : specs) {
    const BoundReport r = check_bound(s, b, w);
    out << r.summary << "\n";
    all = all && r.consistent;
    reports.push_back(r.to_json());
  }
  if (is_d_ha(op) && s.scheme == Scheme::LeftSection) {
    const BoundReport t = tail_bound_check(s);
    out << t.summary << "\n";
    all = all && t.consistent;
    reports.push_back(t.to_json());
    const PointwiseBound pb = tail_to_pointwise(s, tail_sums(s), 1.0);
    out << "tail-to-pointwise: c1 = " << pb.c1 << ", c2 = " << pb.c2 << " (odd indices " << pb.c2_odd << "); "
        << pb.direct.summary << "; " << pb.implied.summary << "\n";
    j["pointwise"] = {{"gamma", pb.gamma},
                      {"c1", pb.c1},
                      {"c2", pb.c2},
                      {"c2_odd", pb.c2_odd},
                      {"direct", pb.direct.to_json()},
                      {"implied", pb.implied.to_json()}};
  }
  j["reports"] = std::move(reports);
  j["all_consistent"] = all;
  emit(cfg, {{"bounds_" + stem(cfg) + ".json", j.dump(2) + "\n"}}, out);
  return kExitOk;
}

int cmd_identity(const RunConfig& cfg, std::ostream& out) {
  const IdentityReport r = verify_dha_identity(cfg.kmax, cfg.jmax);
  if (!r.passed) {
    out << "FAIL (" << r.checks << " exact checks): " << r.detail << "\n";
    return kExitContract;
  }
  out << "PASS (" << r.checks << " exact checks)\n";
  return kExitOk;
}

int cmd_todd(const RunConfig& cfg, std::ostream& out) {
  const ToddReport t = todd_check(cfg.n_lo, cfg.n_hi, 4, 12, cfg.precision);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < t.n.size(); ++k) {
    rows.push_back({{"N", t.n[k]},
                    {"inverse_norm", t.inverse_norm[k].to_decimal(20)},
                    {"integral", static_cast<bool>(t.integral[k])},
                    {"log_margin_c1", t.margins.margin[k]}});
    out << "N=" << t.n[k] << "  ||H^-1|| = " << t.inverse_norm[k].to_decimal(12)
        << "  margin(c=1) = " << t.margins.margin[k] << "\n";
  }
  out << t.margins.summary << "; smallest c = " << t.smallest_c << "; growth exponent over N=" << t.fit_lo << ".."
      << t.fit_hi << " = " << t.growth_exponent << "\n";
  const nlohmann::json j = {{"rows", rows},
                            {"consistent", t.margins.consistent},
                            {"smallest_c", t.smallest_c},
                            {"growth_exponent", t.growth_exponent},
                            {"fit_range", {t.fit_lo, t.fit_hi}}};
  emit(cfg, {{"todd.json", j.dump(2) + "\n"}}, out);
  return kExitOk;
}

int cmd_ncnc(const RunConfig& cfg, std::ostream& out) {
  const mpfr_prec_t p = cfg.precision;
  const NcncTrace tr = build_compact_restriction(dha_section_factor(cfg.n, p), cfg.depth, p);
  nlohmann::json j = tr.to_json(false);
  out << "depth " << tr.depth << " of " << tr.n_max << "; schedule met: " << (tr.schedule_met() ? "yes" : "no")
      << "; orthonormality defect " << tr.orthonormality_defect.to_decimal(4) << "\n";
  if (tr.depth >= 1) {
    const CompactWitness w = compact_product_witness(tr);
    j["witness"] = w.to_json();
    out << "||T B|| = " << w.tb_norm.to_decimal(6) << " <= sum r_n = " << w.sum_bound.to_decimal(6)
        << "; rank(B) = " << w.rank << ", ||B|| = " << w.b_norm.to_decimal(6) << "\n";
  }
  emit(cfg, {{"ncnc_DHa_N" + std::to_string(cfg.n) + ".json", j.dump(2) + "\n"}}, out);
  return kExitOk;
}

int cmd_figures(const RunConfig& cfg, const Cache& cache, std::ostream& out) {
  FigureSpec spec;
  if (cfg.which == "fig1" || cfg.which == "1") {
    spec.which = 1;
  } else if (cfg.which == "fig2" || cfg.which == "2") {
    spec.which = 2;
    spec.ns = {20};
  } else {
    throw ValidationError("--which must be fig1 or fig2");
  }
  spec.precision = cfg.precision;
  const auto provider = [&](const std::string& op, Scheme scheme, int n, mpfr_prec_t p) {
    RunConfig c = cfg;
    c.op = op;
    c.scheme = to_string(scheme);
    c.n = n;
    c.precision = p;
    c.tol.clear();
    return spectrum(c, cache);
  };
  const FigureOutput f = render_figure(spec, cfg.out, provider);
  for (const auto& file : f.files) out << "wrote " << cfg.out << "/" << file << "\n";
  return kExitOk;
}

int cmd_table1(const RunConfig& cfg, const Cache& cache, std::ostream& out) {
  std::vector<Spectrum> spectra;
  for (const char* op : {"HaJ", "DHa"}) {
    RunConfig c = cfg;
    c.op = op;
    c.scheme = "left";
    spectra.push_back(spectrum(c, cache));
  }
  for (const char* op : {"CJ", "MJ"}) {
    RunConfig c = cfg;
    c.op = op;
    c.scheme = "galerkin";
    c.n = cfg.galerkin_n;
    c.arithmetic = "double";
    spectra.push_back(spectrum(c, cache));
  }
  const Table1Report t = table1_summary(spectra);
  out << t.to_text();
  emit(cfg, {{"table1.json", t.to_json().dump(2) + "\n"}, {"table1.csv", t.to_csv()}, {"table1.txt", t.to_text()}},
       out);
  return kExitOk;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  return {{"command", command},   {"op", op},           {"scheme", scheme},         {"n", n},
          {"precision", precision}, {"tol", tol},       {"window", window},         {"out", out},
          {"cache", cache},       {"arithmetic", arithmetic}, {"model", model},     {"kmax", kmax},
          {"jmax", jmax},         {"n_lo", n_lo},       {"n_hi", n_hi},             {"depth", depth},
          {"which", which},       {"rel_tol", rel_tol}, {"galerkin_n", galerkin_n}, {"guard_bits", kGuardBits}};
}

std::string Cache::path_for(const nlohmann::json& key) const {
  return dir_ + "/" + io::sha256_hex(key.dump()) + ".json";
}

std::optional<nlohmann::json> Cache::get(const nlohmann::json& key) const {
  if (!enabled()) return std::nullopt;
  const std::string path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(io::read_file(path));
    if (j.at("key") != key) return std::nullopt;
    return j.at("value");
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void Cache::put(const nlohmann::json& key, const nlohmann::json& value) const {
  if (!enabled()) return;
  const std::string path = path_for(key);
  const std::string tmp = path + ".tmp";
  io::write_file(tmp, nlohmann::json{{"key", key}, {"value", value}}.dump());
  std::filesystem::rename(tmp, path);
}

Arithmetic resolve_arithmetic(Scheme scheme, int n, const std::string& requested) {
  if (requested == "exact") {
    if (scheme == Scheme::RightMidpoint) throw ValidationError("--arithmetic exact is not available for the right scheme");
    return Arithmetic::Exact;
  }
  if (requested == "float") return Arithmetic::Float;
  if (requested == "double") {
    if (scheme != Scheme::Galerkin) throw ValidationError("--arithmetic double is only available for galerkin");
    return Arithmetic::Double;
  }
  if (requested != "auto") throw ValidationError("--arithmetic must be exact, float, double or auto");
  switch (scheme) {
    case Scheme::LeftSection: return Arithmetic::Exact;
    case Scheme::RightMidpoint: return Arithmetic::Float;
    case Scheme::Galerkin: return static_cast<std::size_t>(n) > kDoubleJacobiMaxN ? Arithmetic::Double : Arithmetic::Float;
  }
  return Arithmetic::Float;
}

GramMatrix assemble(const RunConfig& cfg, const Cache& cache) {
  validate(cfg);
  const Scheme scheme = parse_scheme(cfg.scheme);
  const Arithmetic a = resolve_arithmetic(scheme, cfg.n, cfg.arithmetic);
  const CompositionSpec op = CompositionSpec::from_short_name(cfg.op);
  const nlohmann::json key = gram_key(cfg, a);
  if (auto hit = cache.get(key)) return io::gram_from_json(*hit);
  GramMatrix g = [&] {
    switch (scheme) {
      case Scheme::LeftSection: return left_gram(op, cfg.n);
      case Scheme::RightMidpoint: return right_gram(op, cfg.n, series_tol(cfg));
      case Scheme::Galerkin: return galerkin_gram(op, cfg.n, a, cfg.precision);
    }
    throw ValidationError("unknown scheme");
  }();
  cache.put(key, io::gram_to_json(g));
  return g;
}

Spectrum spectrum(const RunConfig& cfg, const Cache& cache) {
  validate(cfg);
  const Scheme scheme = parse_scheme(cfg.scheme);
  const Arithmetic a = resolve_arithmetic(scheme, cfg.n, cfg.arithmetic);
  nlohmann::json key = gram_key(cfg, a);
  key["kind"] = "spectrum";
  if (auto hit = cache.get(key)) return io::spectrum_from_json(*hit);
  const Spectrum s = eigen_sym(assemble(cfg, cache), cfg.precision);
  cache.put(key, io::spectrum_to_json(s));
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Singular spectra of compositions of integration, Cesaro, Hausdorff moment and multiplication operators"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    c->add_option("--cache", cfg.cache, std::string("Cache directory (default: $") + kCacheEnv + ", else none)");
  };
  auto add_operator = [&](CLI::App* c) {
    c->add_option("--op", cfg.op, "Operator: J|CJ|J2|MJ|HaJ|DHa|HN")->capture_default_str();
    c->add_option("--scheme", cfg.scheme, "Discretization: left|right|galerkin")->capture_default_str();
    c->add_option("--n", cfg.n, "Section size N")->capture_default_str();
    c->add_option("--precision", cfg.precision, "Working precision in bits")->capture_default_str();
    c->add_option("--tol", cfg.tol, "Series tolerance per entry (right scheme; default 2^-(p-16))");
    c->add_option("--arithmetic", cfg.arithmetic, "exact|float|double|auto")->capture_default_str();
  };

  auto* assemble_cmd = app.add_subcommand("assemble", "Write a Gram matrix as JSON");
  add_operator(assemble_cmd);
  add_common(assemble_cmd);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Singular values as CSV plus JSON sidecar");
  add_operator(spectrum_cmd);
  add_common(spectrum_cmd);
  auto* fit_cmd = app.add_subcommand("fit", "Fit power and exponential decay models");
  add_operator(fit_cmd);
  add_common(fit_cmd);
  fit_cmd->add_option("--window", cfg.window, "Index window a:b (default max(3,trust/4):trust)");
  fit_cmd->add_option("--model", cfg.model, "power|exponential|both")->capture_default_str();
  auto* bounds_cmd = app.add_subcommand("bounds", "Check the theoretical bound curves");
  add_operator(bounds_cmd);
  add_common(bounds_cmd);
  bounds_cmd->add_option("--window", cfg.window, "Index window a:b (default: trusted indices)");
  auto* identity_cmd = app.add_subcommand("identity", "Check Ha C* = D Ha on monomials exactly");
  identity_cmd->add_option("--kmax", cfg.kmax, "Largest monomial degree")->capture_default_str();
  identity_cmd->add_option("--jmax", cfg.jmax, "Largest sequence index")->capture_default_str();
  add_common(identity_cmd);
  auto* todd_cmd = app.add_subcommand("todd", "Exact Hilbert inverses and the exp(4N) bound");
  todd_cmd->add_option("--nmin", cfg.n_lo, "Smallest section")->capture_default_str();
  todd_cmd->add_option("--nmax", cfg.n_hi, "Largest section (<= 13)")->capture_default_str();
  todd_cmd->add_option("--precision", cfg.precision, "Working precision in bits")->capture_default_str();
  add_common(todd_cmd);
  auto* ncnc_cmd = app.add_subcommand("ncnc", "Compact restriction of the D*Ha section");
  ncnc_cmd->add_option("--n", cfg.n, "Section size N")->capture_default_str();
  ncnc_cmd->add_option("--precision", cfg.precision, "Working precision in bits")->capture_default_str();
  ncnc_cmd->add_option("--depth", cfg.depth, "Largest construction depth")->capture_default_str();
  add_common(ncnc_cmd);
  auto* figures_cmd = app.add_subcommand("figures", "Spectrum plots as CSV and SVG");
  figures_cmd->add_option("--which", cfg.which, "fig1|fig2")->capture_default_str();
  figures_cmd->add_option("--precision", cfg.precision, "Working precision in bits")->capture_default_str();
  add_common(figures_cmd);
  auto* table1_cmd = app.add_subcommand("table1", "Summary of known bounds and fitted behavior");
  table1_cmd->add_option("--n", cfg.n, "Section size for Ha*J and D*Ha")->capture_default_str();
  table1_cmd->add_option("--galerkin-n", cfg.galerkin_n, "Galerkin size for C*J and M_t*J")->capture_default_str();
  table1_cmd->add_option("--precision", cfg.precision, "Working precision in bits")->capture_default_str();
  add_common(table1_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as a ParseError with exit code 0.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (cfg.cache.empty()) {
    if (const char* env = std::getenv(kCacheEnv)) cfg.cache = env;
  }
  const Cache cache(cfg.cache);
  try {
    if (cfg.command == "assemble") return cmd_assemble(cfg, cache, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, cache, out);
    if (cfg.command == "fit") return cmd_fit(cfg, cache, out);
    if (cfg.command == "bounds") return cmd_bounds(cfg, cache, out);
    if (cfg.command == "identity") return cmd_identity(cfg, out);
    if (cfg.command == "todd") return cmd_todd(cfg, out);
    if (cfg.command == "ncnc") return cmd_ncnc(cfg, out);
    if (cfg.command == "figures") return cmd_figures(cfg, cache, out);
    if (cfg.command == "table1") return cmd_table1(cfg, cache, out);
    err << "error: unknown command " << cfg.command << "\n";
    return kExitValidation;
  } catch (const ToleranceUnachievable& e) {
    err << "tolerance unachievable: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const NumericalContractError& e) {
    err << "numerical contract violated: " << e.what() << "\n";
    return kExitContract;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace illspec::cli
