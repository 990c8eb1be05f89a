#include "afprop/tower_json.hpp"

#include "afprop/error.hpp"

namespace afprop {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ValidationError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

template <class T>
T get_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": unexpected value " + v.dump());
  }
}

}  // namespace

BuiltTower tower_from_json(const json& doc) {
  const auto dims = get_as<std::vector<std::vector<std::size_t>>>(field(doc, "levels", "/"), "/levels");
  const auto lays = get_as<std::vector<std::vector<std::vector<std::size_t>>>>(field(doc, "layouts", "/"), "/layouts");
  std::vector<FdCStar> levels;
  for (const auto& d : dims) levels.emplace_back(d);
  std::vector<EmbeddingLayout> layouts;
  for (const auto& l : lays) layouts.emplace_back(l);

  const json& tr = field(doc, "trace", "/");
  const auto kind = get_as<std::string>(field(tr, "kind", "/trace"), "/trace/kind");
  std::vector<TraceWeights> traces;
  if (kind == "uhf") {
    for (const auto& lv : levels) {
      if (lv.block_count() != 1) throw ValidationError("/trace: uhf trace needs one block per level");
      traces.emplace_back(std::vector<double>{1.0});
    }
  } else if (kind == "cantor") {
    for (const auto& lv : levels) traces.emplace_back(std::vector<double>(lv.block_count(), 1.0 / double(lv.block_count())));
  } else if (kind == "explicit") {
    for (const auto& w : get_as<std::vector<std::vector<double>>>(field(tr, "weights", "/trace"), "/trace/weights"))
      traces.emplace_back(w);
  } else if (kind == "effros-shen") {
    const double theta = get_as<double>(field(tr, "theta", "/trace"), "/trace/theta");
    std::vector<Digit> digits;
    for (std::size_t n = 0; n < layouts.size(); ++n) {
      if (layouts[n].target_count() != 2) throw ValidationError("/layouts: effros-shen layouts have two targets");
      digits.push_back(layouts[n].multiplicity(0, 0));
    }
    const auto ref = effros_shen_tower(digits, theta, 1.0);
    if (ref.tower.levels() != levels || ref.tower.layouts() != layouts)
      throw InconsistencyError("/layouts: levels and layouts are not the Effros-Shen tower of their digits");
    traces = ref.tower.traces();
  } else {
    throw ValidationError("/trace/kind: unknown kind \"" + kind + "\"");
  }
  const std::string label = doc.contains("label") ? get_as<std::string>(doc["label"], "/label") : kind;
  InductiveTower tower(std::move(levels), std::move(layouts), std::move(traces), label);

  const json& bt = field(doc, "beta", "/");
  const auto bkind = get_as<std::string>(field(bt, "kind", "/beta"), "/beta/kind");
  BetaSequence beta;
  if (bkind == "dim-power") {
    beta = dim_power_beta(tower, get_as<double>(field(bt, "k", "/beta"), "/beta/k"));
  } else if (bkind == "explicit") {
    const std::string rule = bt.contains("rule") ? get_as<std::string>(bt["rule"], "/beta/rule") : "explicit";
    std::optional<double> k;
    if (bt.contains("k")) k = get_as<double>(bt["k"], "/beta/k");
    beta = BetaSequence(get_as<std::vector<double>>(field(bt, "values", "/beta"), "/beta/values"), rule, k);
    if (beta.size() < tower.top_level() + 1) throw ValidationError("/beta/values: one value per level expected");
    beta = beta.truncated(tower.top_level());
  } else if (bkind == "cantor") {
    beta = cantor_beta(get_as<double>(field(bt, "r", "/beta"), "/beta/r"), tower.top_level());
  } else {
    throw ValidationError("/beta/kind: unknown kind \"" + bkind + "\"");
  }
  return {std::move(tower), std::move(beta)};
}

BuiltTower tower_from_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("tower spec parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
  }
  return tower_from_json(doc);
}

json tower_to_json(const BuiltTower& built) {
  const auto& t = built.tower;
  json levels = json::array(), layouts = json::array(), traces = json::array();
  for (const auto& lv : t.levels()) levels.push_back(lv.block_dims());
  for (const auto& l : t.layouts()) layouts.push_back(l.targets());
  for (const auto& w : t.traces()) traces.push_back(w.values());
  json beta = {{"kind", "explicit"}, {"rule", built.beta.rule()}, {"values", built.beta.values()}};
  if (built.beta.k()) beta["k"] = *built.beta.k();
  return {{"label", t.label()},
          {"levels", levels},
          {"layouts", layouts},
          {"trace", {{"kind", "explicit"}, {"weights", traces}}},
          {"beta", beta}};
}

json report_to_json(const ValidationReport& report) {
  json v = json::array();
  for (const auto& x : report.violations)
    v.push_back({{"level", x.level}, {"kind", x.kind}, {"residual", x.residual}, {"message", x.message}});
  return {{"ok", report.ok()}, {"max_trace_residual", report.max_trace_residual}, {"violations", v}};
}

}  // namespace afprop
