#include "prodsys/config.hpp"

#include <fstream>
#include <sstream>

namespace prodsys {

using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration";
  for (const auto& l : lines) out += "\n  - " + l;
  return out;
}

// Signed or unsigned storage: json built in code holds positive literals as signed.
bool is_nonnegative_int(const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

std::optional<IdealBound> parse_bound(const json& node, const std::string& where, std::vector<std::string>& errs) {
  if (!node.is_object()) {
    errs.push_back(where + ": expected an object with 'length' or 'box'");
    return std::nullopt;
  }
  const bool has_len = node.contains("length");
  const bool has_box = node.contains("box");
  if (has_len == has_box) {
    errs.push_back(where + ": give exactly one of 'length' or 'box'");
    return std::nullopt;
  }
  if (has_len) {
    const auto& l = node["length"];
    if (!is_nonnegative_int(l)) {
      errs.push_back(where + ".length: expected a nonnegative integer");
      return std::nullopt;
    }
    return LengthBound{l.get<unsigned>()};
  }
  const auto& b = node["box"];
  if (!b.is_array() || b.empty()) {
    errs.push_back(where + ".box: expected a nonempty array of nonnegative integers");
    return std::nullopt;
  }
  BoxBound box;
  for (const auto& v : b) {
    if (!is_nonnegative_int(v)) {
      errs.push_back(where + ".box: expected nonnegative integers");
      return std::nullopt;
    }
    box.limits.push_back(v.get<unsigned>());
  }
  return box;
}

json bound_json(const IdealBound& b) {
  if (const auto* l = std::get_if<LengthBound>(&b)) return json{{"length", l->max_degree}};
  return json{{"box", std::get<BoxBound>(b).limits}};
}

std::string kind_name(MonoidKind k) {
  switch (k) {
    case MonoidKind::free_product: return "free-product";
    case MonoidKind::direct_sum: return "direct-sum";
    case MonoidKind::total_order: return "total-order";
  }
  return "?";
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

const IdealBound& SystemConfig::require_truncation() const {
  if (!truncation) throw ConfigError({"this command needs a 'truncation' block ({\"length\": L} or {\"box\": [...]})"});
  return *truncation;
}

SystemConfig parse_config(const json& doc) {
  std::vector<std::string> errs;
  if (!doc.is_object()) throw ConfigError({"document must be a JSON object"});
  if (doc.contains("schema") && doc["schema"] != kConfigSchema) {
    errs.push_back("schema: expected \"" + std::string(kConfigSchema) + "\"");
  }

  std::uint32_t working_dim = 3;
  std::optional<IdealBound> truncation;
  if (doc.contains("truncation")) {
    const auto& t = doc["truncation"];
    if (t.is_object() && t.contains("working_dim")) {
      if (!is_nonnegative_int(t["working_dim"]) || t["working_dim"].get<unsigned>() == 0) {
        errs.push_back("truncation.working_dim: expected a positive integer");
      } else {
        working_dim = t["working_dim"].get<std::uint32_t>();
      }
    }
    json bound = t;
    if (bound.is_object()) bound.erase("working_dim");
    truncation = parse_bound(bound, "truncation", errs);
  }

  // Monoid.
  std::optional<Monoid> monoid;
  std::vector<GeneratorDim> dims;
  if (!doc.contains("monoid") || !doc["monoid"].is_object()) {
    errs.push_back("monoid: required object");
  } else {
    const auto& m = doc["monoid"];
    MonoidKind kind = MonoidKind::free_product;
    const std::string k = m.value("kind", "");
    if (k == "free-product") {
      kind = MonoidKind::free_product;
    } else if (k == "direct-sum") {
      kind = MonoidKind::direct_sum;
    } else if (k == "total-order") {
      kind = MonoidKind::total_order;
    } else {
      errs.push_back("monoid.kind: expected free-product, direct-sum or total-order");
    }
    std::vector<Factor> factors;
    if (!m.contains("factors") || !m["factors"].is_array() || m["factors"].empty()) {
      errs.push_back("monoid.factors: required nonempty array");
    } else {
      for (std::size_t i = 0; i < m["factors"].size(); ++i) {
        const auto& f = m["factors"][i];
        const std::string where = "monoid.factors[" + std::to_string(i) + "]";
        if (!f.is_object()) {
          errs.push_back(where + ": expected an object");
          continue;
        }
        Factor factor;
        factor.name = f.value("name", "");
        const std::string fk = f.value("kind", "integers");
        if (fk == "integers") {
          factor.kind = FactorKind::integers;
        } else if (fk == "rationals-dense") {
          factor.kind = FactorKind::rationals_dense;
        } else {
          errs.push_back(where + ".kind: expected integers or rationals-dense");
        }
        GeneratorDim d;
        if (f.contains("dim")) {
          const auto& dv = f["dim"];
          if (dv.is_string() && dv == "infinite") {
            d = GeneratorDim::infinite_truncated(working_dim);
          } else if (is_nonnegative_int(dv) && dv.get<unsigned>() >= 1) {
            d = GeneratorDim::finite(dv.get<std::uint32_t>());
          } else {
            errs.push_back(where + ".dim: expected a positive integer or \"infinite\"");
          }
        }
        factors.push_back(factor);
        dims.push_back(d);
      }
    }
    if (kind == MonoidKind::total_order && factors.size() > 1) {
      errs.push_back("monoid: a total order has exactly one factor");
    }
    if (errs.empty()) {
      try {
        monoid.emplace(kind, factors);
      } catch (const std::exception& e) {
        errs.push_back(std::string("monoid: ") + e.what());
      }
    }
  }

  // System.
  std::optional<ProductSystem> system;
  std::optional<IdealBound> vn_support;
  if (monoid) {
    const json s = doc.value("system", json::object());
    const std::string style = s.value("style", "word-graded");
    try {
      if (style == "word-graded") {
        system.emplace(ProductSystem::word_graded(*monoid, dims));
      } else if (style == "vn-truncated") {
        const unsigned h = s.value("hilbert_dim", 2u);
        if (!s.contains("support")) {
          errs.push_back("system.support: vn-truncated systems need a support bound");
        } else if (auto support = parse_bound(s["support"], "system.support", errs)) {
          if (monoid->has_dense_factor()) {
            errs.push_back("system: vn-truncated systems need enumerable ideals (no dense factors)");
          } else {
            system.emplace(ProductSystem::von_neumann(*monoid, h, *support));
            vn_support = support;
          }
        }
      } else {
        errs.push_back("system.style: expected word-graded or vn-truncated");
      }
    } catch (const std::exception& e) {
      errs.push_back(std::string("system: ") + e.what());
    }
    if (truncation && monoid->has_dense_factor()) {
      errs.push_back("truncation: dense factors have no finite ideals, so no Fock truncation exists");
    }
    if (truncation && std::holds_alternative<BoxBound>(*truncation)) {
      const auto& box = std::get<BoxBound>(*truncation);
      if (monoid->kind() == MonoidKind::free_product) {
        errs.push_back("truncation.box: free products are truncated by length");
      } else if (box.limits.size() != monoid->factor_count()) {
        errs.push_back("truncation.box: need one limit per factor");
      }
    }
  }

  if (!errs.empty()) throw ConfigError(std::move(errs));
  SystemConfig out{std::move(*system), truncation, working_dim, doc.value("label", ""), vn_support};
  return out;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError({"malformed JSON in '" + path + "': " + e.what()});
  }
  return parse_config(doc);
}

SystemConfig default_config() { return trivial_config(Monoid::free_naturals(2), LengthBound{3}, "trivial a*b"); }

SystemConfig trivial_config(Monoid monoid, IdealBound bound, std::string label) {
  return SystemConfig{ProductSystem::trivial(std::move(monoid)), std::move(bound), 3, std::move(label), std::nullopt};
}

SystemConfig dims_config(Monoid monoid, std::vector<GeneratorDim> dims, IdealBound bound, std::string label) {
  std::uint32_t working = 3;
  for (const auto& d : dims) {
    if (d.infinite) working = d.dim;
  }
  return SystemConfig{ProductSystem::word_graded(std::move(monoid), std::move(dims)), std::move(bound), working,
                      std::move(label), std::nullopt};
}

json to_json(const SystemConfig& cfg) {
  const Monoid& m = cfg.monoid();
  json factors = json::array();
  for (std::size_t i = 0; i < m.factor_count(); ++i) {
    json f{{"name", m.factors()[i].name},
           {"kind", m.factors()[i].kind == FactorKind::integers ? "integers" : "rationals-dense"}};
    const GeneratorDim& d = cfg.system.generator_dims()[i];
    if (d.infinite) {
      f["dim"] = "infinite";
    } else {
      f["dim"] = d.dim;
    }
    factors.push_back(f);
  }
  json doc{{"schema", kConfigSchema}, {"monoid", {{"kind", kind_name(m.kind())}, {"factors", factors}}}};
  if (cfg.system.style() == SystemStyle::vn_truncated) {
    doc["system"] = {{"style", "vn-truncated"}, {"hilbert_dim", cfg.system.hilbert_dim()}};
    if (cfg.vn_support) doc["system"]["support"] = bound_json(*cfg.vn_support);
  } else {
    doc["system"] = {{"style", "word-graded"}};
  }
  if (cfg.truncation) {
    doc["truncation"] = bound_json(*cfg.truncation);
    doc["truncation"]["working_dim"] = cfg.working_dim;
  }
  if (!cfg.label.empty()) doc["label"] = cfg.label;
  return doc;
}

}  // namespace prodsys
