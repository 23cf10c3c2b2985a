#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <unsupported/Eigen/SparseExtra>

#include "CLI11.hpp"
#include "json.hpp"
#include "prodsys/checks.hpp"
#include "prodsys/config.hpp"
#include "prodsys/demos.hpp"
#include "prodsys/expression.hpp"
#include "prodsys/fock.hpp"
#include "prodsys/linalg.hpp"
#include "prodsys/wick.hpp"

namespace {

using json = nlohmann::json;
using namespace prodsys;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUnsupported = 3;

struct Globals {
  std::string config_path;
  std::string format = "text";
  bool timing = false;

  bool machine() const { return format == "machine"; }
  SystemConfig config() const { return config_path.empty() ? default_config() : load_config(config_path); }
};

void emit(const Globals& g, const json& doc, const std::string& text) {
  if (g.machine()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text << '\n';
  }
}

int emit_inexact(const Globals& g, const std::string& what, const std::string& reason) {
  emit(g, json{{"command", what}, {"status", "inexact"}, {"reason", reason}}, "inexact: " + reason);
  return kExitUnsupported;
}

int run_reports(const Globals& g, const SuiteReport& r) {
  if (g.machine()) {
    std::cout << to_json(r, g.timing).dump(2) << '\n';
  } else {
    std::cout << to_text(r, g.timing);
  }
  return exit_code({r});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-system algebra harness"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "System configuration (JSON)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--timing", g.timing, "Include wall times in reports");

  std::string s, t, e1, e2, suite, demo, matrix_out;
  std::optional<unsigned> bound;
  std::uint64_t seed = 1;
  std::size_t samples = 0;

  auto* join = app.add_subcommand("join", "Least upper bound s v t");
  join->add_option("s", s)->required();
  join->add_option("t", t)->required();
  auto* leq = app.add_subcommand("leq", "Order test s <= t");
  leq->add_option("s", s)->required();
  leq->add_option("t", t)->required();
  auto* mul = app.add_subcommand("wick-mul", "Product of two Wick expressions");
  mul->add_option("a", e1)->required();
  mul->add_option("b", e2)->required();
  auto* expect = app.add_subcommand("expect", "Gauge-diagonal part of an expression");
  expect->add_option("x", e1)->required();
  auto* norm = app.add_subcommand("norm-diag", "Norm of a diagonal expression with its certificate grade");
  norm->add_option("x", e1)->required();
  auto* fock = app.add_subcommand("fock", "Truncated Fock matrix of an expression");
  fock->add_option("x", e1)->required();
  fock->add_option("--bound", bound, "Length bound L (overrides the config truncation)");
  fock->add_option("--matrix-out", matrix_out, "Write the matrix in Matrix Market format");
  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("--suite", suite, "Suite id")->required()->check(CLI::IsMember(suite_ids()));
  check->add_option("--seed", seed, "Seed for randomized cases");
  check->add_option("--samples", samples, "Random cases per check (0: suite default)");
  auto* dm = app.add_subcommand("demo", "Run a named scenario");
  dm->add_option("name", demo)->required()->check(CLI::IsMember(demo_ids()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*dm) return run_reports(g, run_demo(demo));

    const SystemConfig cfg = g.config();
    const Monoid& m = cfg.monoid();
    const ProductSystem& sys = cfg.system;

    if (*join) {
      const MonoidElement a = m.parse(s), b = m.parse(t);
      const std::string out = m.format(m.join(a, b));
      emit(g, json{{"command", "join"}, {"s", m.format(a)}, {"t", m.format(b)}, {"join", out}}, out);
      return kExitPass;
    }
    if (*leq) {
      const MonoidElement a = m.parse(s), b = m.parse(t);
      const bool v = m.leq(a, b);
      emit(g, json{{"command", "leq"}, {"s", m.format(a)}, {"t", m.format(b)}, {"leq", v}}, v ? "true" : "false");
      return kExitPass;
    }
    if (*mul) {
      const WickElement a = parse_expression(sys, e1), b = parse_expression(sys, e2);
      const auto ab = wick_multiply(sys, a, b);
      if (!ab.exact()) return emit_inexact(g, "wick-mul", ab.inexact_reason);
      const std::string out = format(m, *ab.value);
      emit(g, json{{"command", "wick-mul"}, {"status", "exact"}, {"product", out}, {"terms", ab.value->size()}}, out);
      return kExitPass;
    }
    if (*expect) {
      const std::string out = format(m, phi_delta(parse_expression(sys, e1)));
      emit(g, json{{"command", "expect"}, {"result", out}}, out);
      return kExitPass;
    }
    if (*norm) {
      const WickElement x = parse_expression(sys, e1);
      if (!x.is_diagonal()) {
        std::cerr << "error: norm-diag needs a diagonal expression (equal creation and annihilation grades)\n";
        return kExitConfig;
      }
      const auto v = norm_diagonal(sys, x);
      if (!v.exact()) return emit_inexact(g, "norm-diag", v.inexact_reason);
      std::ostringstream text;
      text.precision(15);
      text << v.value->value << "  (certificate grade " << m.format(v.value->a) << ", block dimension "
           << v.value->matrix_dim << ")";
      emit(g,
           json{{"command", "norm-diag"},
                {"value", v.value->value},
                {"certificate", m.format(v.value->a)},
                {"block_dimension", v.value->matrix_dim}},
           text.str());
      return kExitPass;
    }
    if (*fock) {
      const IdealBound b = bound ? IdealBound{LengthBound{*bound}} : cfg.require_truncation();
      const auto basis = std::make_shared<const FockBasis>(sys, b);
      const WickElement x = parse_expression(sys, e1);
      const FockOperator op = represent(basis, x);
      const auto interior = basis->interior(creation_depth(x));
      const NormEstimate est = operator_norm(columns(op.matrix, interior));
      if (!matrix_out.empty() && !Eigen::saveMarket(op.matrix, matrix_out)) {
        std::cerr << "error: cannot write '" << matrix_out << "'\n";
        return kExitConfig;
      }
      std::ostringstream text;
      text.precision(15);
      text << "states " << basis->size() << ", nonzeros " << op.matrix.nonZeros() << ", interior columns "
           << interior.size() << ", norm on interior " << est.value;
      emit(g,
           json{{"command", "fock"},
                {"bound", describe(b)},
                {"states", basis->size()},
                {"nonzeros", op.matrix.nonZeros()},
                {"interior_columns", interior.size()},
                {"interior_norm", est.value},
                {"norm_converged", est.converged}},
           text.str());
      return kExitPass;
    }
    if (*check) return run_reports(g, run_check_suite(cfg, suite, SuiteOptions{seed, samples}));
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedOperation& err) {
    std::cerr << "unsupported: " << err.what() << '\n';
    return kExitUnsupported;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitFail;
  }
  return kExitPass;
}
