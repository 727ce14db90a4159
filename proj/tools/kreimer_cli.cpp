// Command-line front end: renorm, regularize, germ, check-similar, quad-check.
//
// Exit codes: 0 success, 1 bad input (parse, weight, truncation, usage),
// 2 locality or proper-decoration violation, 3 numeric check failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kreimer/kreimer.hpp"

namespace {

using namespace kreimer;

enum ExitCode { kOk = 0, kInput = 1, kLocality = 2, kNumeric = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a cross-check disagrees; maps to exit code 3.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<unsigned> trunc;
  std::string format = "both";
  double quad_tol = QuadConfig{}.relative_tolerance;
  std::uint64_t seed = 0;
  unsigned samples = 5;
  bool explicit_mode = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedForest load(const std::string& path, const Options& opts) {
  try {
    return parse_forest(read_input(path),
                        opts.explicit_mode ? DecorationMode::explicit_vectors : DecorationMode::canonical);
  } catch (const Error& e) {
    // Re-throw with the file name attached, keeping the type for the exit code.
    const std::string where = path + ": ";
    if (dynamic_cast<const ParseError*>(&e)) throw ParseError(where + e.what());
    if (dynamic_cast<const NonPositiveWeight*>(&e)) throw NonPositiveWeight(where + e.what());
    if (dynamic_cast<const NotProperlyDecorated*>(&e)) throw NotProperlyDecorated(where + e.what());
    throw;
  }
}

std::string format_float(const HighPrecision& v) {
  if (v == 0) return "0";
  return v.str(20, std::ios_base::fmtflags(0));
}

void print_value(const PiPoly& exact, const Options& opts) {
  if (opts.format != "float") std::cout << exact.to_string() << "\n";
  if (opts.format != "exact") std::cout << format_float(exact.evaluate()) << "\n";
}

void header(const std::string& path, std::size_t count) {
  if (count > 1) std::cout << "== " << path << "\n";
}

int cmd_renorm(const std::vector<std::string>& files, const Options& opts) {
  for (const auto& path : files) {
    const auto p = load(path, opts);
    RenormOptions ro;
    ro.truncation = opts.trunc;
    const auto value = renormalize(p.forest, p.q, ro);
    header(path, files.size());
    print_value(value.exact, opts);
  }
  return kOk;
}

std::string join_forms(const std::vector<LinearForm>& forms) {
  std::string out;
  for (std::size_t i = 0; i < forms.size(); ++i) out += (i ? "; " : "") + forms[i].to_string();
  return out;
}

int cmd_regularize(const std::vector<std::string>& files, const Options& opts) {
  for (const auto& path : files) {
    const auto p = load(path, opts);
    const auto r = regularize(p.forest, p.q);
    header(path, files.size());
    std::cout << "exponent: " << r.exponent.to_string() << "\n";
    std::cout << "factors: " << join_forms(r.factors) << "\n";
  }
  return kOk;
}

/// Series text with variables renamed z0, z1, ... in preorder.
std::string format_germ(const TruncSeries& s) {
  const auto& vars = s.variables();
  const auto terms = s.terms();
  std::vector<std::pair<unsigned, const Exponent*>> order;
  for (const auto& [e, c] : terms) order.emplace_back(e.total_degree(), &e);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out;
  for (const auto& [deg, e] : order) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if ((*e)[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(i);
      if ((*e)[i] > 1) mono += "^" + std::to_string((*e)[i]);
    }
    const std::string c = terms.at(*e).to_string();
    out += mono.empty() ? c : "(" + c + ")*" + mono;
  }
  if (out.empty()) out = "0";
  return out + " + O(" + std::to_string(s.truncation() + 1) + ")";
}

int cmd_germ(const std::vector<std::string>& files, const Options& opts) {
  for (const auto& path : files) {
    const auto p = load(path, opts);
    const unsigned n = opts.trunc.value_or(static_cast<unsigned>(degree(p.forest)) + 2);
    auto [frac, ctx] = expand_r1(p.forest, p.q, n);
    const TruncSeries germ = piplus_expand(frac, ctx);
    header(path, files.size());
    const auto sums = subtree_sums(p.forest);
    std::size_t k = 0;
    for (const auto& v : vertices(p.forest))
      std::cout << "z" << k++ << " = " << sums.at(v.id).to_string() << "\n";
    std::cout << "germ: " << format_germ(germ) << "\n";
  }
  return kOk;
}

int cmd_check_similar(const std::string& first, const std::string& second, const Options& opts) {
  const auto a = load(first, opts);
  const auto b = load(second, opts);
  if (!is_similar(a.forest, a.q, b.forest, b.q)) {
    std::cout << "NOT-SIMILAR\n";
    return kOk;
  }
  std::cout << "SIMILAR\n";
  RenormOptions ro;
  ro.truncation = opts.trunc;
  const auto va = renormalize(a.forest, a.q, ro);
  const auto vb = renormalize(b.forest, b.q, ro);
  if (va.exact != vb.exact)
    throw CheckFailed("similar forests renormalize differently: " + va.exact.to_string() + " vs " +
                      vb.exact.to_string());
  print_value(va.exact, opts);
  return kOk;
}

int cmd_quad_check(const std::vector<std::string>& files, const Options& opts) {
  QuadConfig cfg;
  cfg.relative_tolerance = opts.quad_tol;
  const double threshold = std::max(1e-6, 100 * opts.quad_tol);
  std::mt19937_64 rng(opts.seed);
  double worst = 0;
  for (const auto& path : files) {
    const auto p = load(path, opts);
    const auto r = regularize(p.forest, p.q);
    header(path, files.size());
    for (unsigned k = 0; k < opts.samples; ++k) {
      const auto assign = random_admissible_assignment(p.forest, rng);
      const double quad = quad_tree(p.forest, assign, 1.0, cfg);
      const double closed = closed_form_value(r, assign, 1.0);
      const double err = std::abs(quad - closed) / std::abs(closed);
      worst = std::max(worst, err);
      std::ostringstream line;
      line.precision(12);
      line << "sample " << k << ": quadrature " << quad << ", closed form " << closed << ", relative error "
           << std::scientific << std::setprecision(2) << err;
      std::cout << line.str() << "\n";
    }
  }
  std::ostringstream line;
  line << std::scientific << std::setprecision(2) << worst;
  std::cout << "max relative error: " << line.str() << "\n";
  if (worst > threshold) {
    std::ostringstream msg;
    msg << "quadrature disagrees with the closed form beyond " << threshold;
    throw CheckFailed(msg.str());
  }
  return kOk;
}

int report(const std::string& what, int code) {
  std::cerr << "error: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized and renormalized branched integrals on decorated rooted forests"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--trunc", opts.trunc, "Numerator truncation degree (default: degree + 2)");
  app.add_option("--format", opts.format, "Value output: exact, float or both")
      ->check(CLI::IsMember({"exact", "float", "both"}));
  app.add_option("--quad-tol", opts.quad_tol, "Relative tolerance of each quadrature")->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "Seed for randomized checks");
  app.add_option("--samples", opts.samples, "Random assignments per forest in quad-check");
  app.add_flag("--explicit", opts.explicit_mode, "Vector decorations with a leading Q= line");

  std::vector<std::string> files;
  std::string first, second;
  auto* renorm = app.add_subcommand("renorm", "Exact renormalized value");
  auto* reg = app.add_subcommand("regularize", "Closed form of the regularized integral");
  auto* germ = app.add_subcommand("germ", "Truncated holomorphic projection of R_1");
  auto* quad = app.add_subcommand("quad-check", "Quadrature against the closed form");
  auto* sim = app.add_subcommand("check-similar", "Similarity test and value comparison");
  for (auto* sub : {renorm, reg, germ, quad}) {
    sub->add_option("files", files, "Forest files ('-' for stdin)")->required();
    sub->fallthrough();
  }
  sim->add_option("first", first, "First forest file")->required();
  sim->add_option("second", second, "Second forest file")->required();
  sim->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*renorm) return cmd_renorm(files, opts);
    if (*reg) return cmd_regularize(files, opts);
    if (*germ) return cmd_germ(files, opts);
    if (*quad) return cmd_quad_check(files, opts);
    return cmd_check_similar(first, second, opts);
  } catch (const LocalityViolation& e) {
    return report(e.what(), kLocality);
  } catch (const NotProperlyDecorated& e) {
    return report(e.what(), kLocality);
  } catch (const SingularGram& e) {
    return report(e.what(), kLocality);
  } catch (const ConvergenceFailure& e) {
    return report(e.what(), kNumeric);
  } catch (const DomainError& e) {
    return report(e.what(), kNumeric);
  } catch (const TruncationInstability& e) {
    return report(e.what(), kNumeric);
  } catch (const NotDivisible& e) {
    return report(e.what(), kNumeric);
  } catch (const CheckFailed& e) {
    return report(e.what(), kNumeric);
  } catch (const Error& e) {
    return report(e.what(), kInput);
  } catch (const InputError& e) {
    return report(e.what(), kInput);
  }
}
