#include "fracprop/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fracprop/error.hpp"
#include "fracprop/exponent_algebra.hpp"
#include "fracprop/identification.hpp"
#include "fracprop/io.hpp"
#include "fracprop/propagator.hpp"
#include "fracprop/verify.hpp"

namespace fracprop {

namespace {

struct EvolveArgs {
  double alpha = 2.0;
  double beta = 1.0;
  double t = 1.0;
  double band = 0.0;
  std::string input;
  std::string output;
  std::optional<std::size_t> grid_n;
  std::optional<double> x_max;
};

struct IdentifyArgs {
  std::string symbol;
  double a = 0.0;
  double b = 0.0;
  double tol = 1e-9;
};

struct VerifyArgs {
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  bool fast = false;
  bool mutate_dilate = false;
};

struct ClassifyArgs {
  std::string terms_file;
  std::string terms_json;
  double alpha_tol = 0.0;
};

void print(std::ostream& out, const Json& j) { out << dump_json(j) << '\n'; }

int fail(std::ostream& out, std::ostream& err, const char* command, int code, const Error& e) {
  err << "fracprop " << command << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
  print(out, Json{{"schema", 1}, {"command", command}, {"error", to_string(e.kind())}, {"message", e.what()},
                  {"exit_code", code}});
  return code;
}

int cmd_evolve(const EvolveArgs& a, std::ostream& out, std::ostream& err) {
  SampledSignal f{SpatialGrid(8, 1.0)};
  try {
    f = read_signal_csv(a.input);
    if ((a.grid_n && *a.grid_n != f.grid.size()) ||
        (a.x_max && std::abs(*a.x_max - f.grid.x_max()) > 1e-9 * std::abs(*a.x_max))) {
      throw Error(ErrorKind::GridMismatch, "input grid does not match --grid-n / --x-max");
    }
  } catch (const Error& e) {
    return fail(out, err, "evolve", exit_code::kBadInput, e);
  }

  std::optional<BandSpec> band;
  try {
    band.emplace(a.band);
    band->require_resolvable(f.grid);
  } catch (const Error& e) {
    return fail(out, err, "evolve", exit_code::kBandUnresolvable, e);
  }

  try {
    const SampledSignal g = apply(ClosedForm{a.alpha, a.beta * a.t}, f, *band);
    write_signal_csv(a.output, g);
    print(out, Json{{"schema", 1},
                    {"command", "evolve"},
                    {"alpha", a.alpha},
                    {"beta", a.beta},
                    {"t", a.t},
                    {"band", a.band},
                    {"n", f.grid.size()},
                    {"x_max", f.grid.x_max()},
                    {"norm_in", norm(f)},
                    {"norm_in_band", norm(band_project(f, *band))},
                    {"norm_out", norm(g)}});
    return exit_code::kOk;
  } catch (const Error& e) {
    return fail(out, err, "evolve", exit_code::kBadInput, e);
  }
}

int cmd_identify(const IdentifyArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const Tabulated profile = read_symbol_csv(a.symbol);
    const SemistablePair pair(a.a, a.b);
    IdentifyOptions options;
    options.tol = a.tol;
    const IdentificationResult r = identify(profile, pair, options);
    Json j{{"schema", 1}, {"command", "identify"}, {"a", a.a}, {"b", a.b}, {"tol", a.tol}};
    j.update(to_json(r));
    print(out, j);
    return exit_code::kOk;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::DegenerateSymbol: return fail(out, err, "identify", exit_code::kDegenerateSymbol, e);
      case ErrorKind::InconsistentPair: return fail(out, err, "identify", exit_code::kInconsistentPair, e);
      case ErrorKind::ModelMismatch: return fail(out, err, "identify", exit_code::kModelMismatch, e);
      default: return fail(out, err, "identify", exit_code::kBadInput, e);
    }
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.alpha = a.alpha;
  options.beta = a.beta;
  options.seed = a.seed;
  options.fast = a.fast;
  if (a.mutate_dilate) {
    // Deliberately wrong dilation: the factor is off by one part in a thousand.
    options.dilate = [](const MultiplierSpec& m, long double lambda) { return dilate(m, lambda * 1.001L); };
  }
  try {
    const VerifyReport report = run_verify(options);
    Json j = to_json(report);
    if (a.mutate_dilate) j["mutation"] = "dilate";
    print(out, j);
    for (const auto& c : report.checks) {
      if (!c.pass) err << "fracprop verify: check failed: " << c.name << '\n';
    }
    return report.pass ? exit_code::kOk : exit_code::kCheckFailed;
  } catch (const Error& e) {
    return fail(out, err, "verify", exit_code::kBadInput, e);
  }
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  try {
    std::string text = a.terms_json;
    if (!a.terms_file.empty()) {
      std::ifstream in(a.terms_file);
      if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + a.terms_file);
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    std::vector<PhaseTerm> terms;
    Json input;
    try {
      input = Json::parse(text);
      if (!input.is_array()) throw Error(ErrorKind::InvalidInput, "terms must be a JSON array");
      for (const auto& item : input) terms.push_back({item.at("alpha").get<double>(), item.at("beta").get<double>()});
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::InvalidInput, std::string("malformed terms: ") + e.what());
    }
    const ProductVerdict v = classify_product(terms, a.alpha_tol);
    Json j{{"schema", 1}, {"command", "classify"}, {"alpha_tol", a.alpha_tol}, {"terms", input}};
    j.update(to_json(v));
    if (v.witness) j["witness_deviation"] = product_deviation(terms, *v.witness);
    print(out, j);
    return exit_code::kOk;
  } catch (const Error& e) {
    return fail(out, err, "classify", exit_code::kBadInput, e);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier multipliers exp(i beta t |xi|^alpha): evolve, identify, verify, classify", "fracprop"};
  app.require_subcommand(1);

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Apply exp(i beta t |xi|^alpha) on the band [1/R, R] to a signal CSV");
  evolve->add_option("--alpha", ev.alpha, "exponent")->required();
  evolve->add_option("--beta", ev.beta, "coefficient")->required();
  evolve->add_option("--t", ev.t, "group time")->capture_default_str();
  evolve->add_option("--input", ev.input, "signal CSV (x,re,im)")->required();
  evolve->add_option("--output", ev.output, "evolved signal CSV")->required();
  evolve->add_option("--band", ev.band, "band radius R > 1")->required();
  evolve->add_option("--grid-n", ev.grid_n, "expected sample count of the input");
  evolve->add_option("--x-max", ev.x_max, "expected half-width of the input window");

  IdentifyArgs id;
  auto* identify_cmd = app.add_subcommand("identify", "Recover (alpha, beta) from a tabulated symbol CSV (r,re,im)");
  identify_cmd->add_option("--symbol", id.symbol, "symbol CSV")->required();
  identify_cmd->add_option("--a", id.a, "semistability constant a")->required();
  identify_cmd->add_option("--b", id.b, "semistability constant b")->required();
  identify_cmd->add_option("--tol", id.tol, "identity and reconstruction tolerance")->capture_default_str();

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Run the property suite for exp(i beta |xi|^alpha)");
  verify->add_option("--alpha", ve.alpha, "exponent")->required();
  verify->add_option("--beta", ve.beta, "coefficient")->required();
  verify->add_option("--seed", ve.seed, "probe seed")->capture_default_str();
  verify->add_flag("--fast", ve.fast, "half-size grids and trial counts, tolerances x10");
  verify->add_flag("--mutate-dilate", ve.mutate_dilate)->group("");

  ClassifyArgs cl;
  auto* classify = app.add_subcommand("classify", "Decide whether prod_j exp(i beta_j r^alpha_j) == 1");
  auto* file_opt = classify->add_option("--terms", cl.terms_file, "JSON file: [{\"alpha\": .., \"beta\": ..}, ..]");
  auto* json_opt = classify->add_option("--json", cl.terms_json, "the same list given inline");
  file_opt->excludes(json_opt);
  classify->add_option("--alpha-tol", cl.alpha_tol, "exponent grouping tolerance")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (classify->parsed() && cl.terms_file.empty() && cl.terms_json.empty()) {
      throw CLI::RequiredError("--terms or --json");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kBadInput;
  }

  if (evolve->parsed()) return cmd_evolve(ev, out, err);
  if (identify_cmd->parsed()) return cmd_identify(id, out, err);
  if (verify->parsed()) return cmd_verify(ve, out, err);
  return cmd_classify(cl, out, err);
}

}  // namespace fracprop
