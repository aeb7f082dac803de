#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "eigloc/error.hpp"
#include "eigloc/io.hpp"

namespace eigloc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) bad(where + ": unknown key '" + item.key() + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing '" + key + "'");
  return *it;
}

double probability(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) bad(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

std::size_t size_field(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    bad(where + ": '" + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

TwoLevelSpec spec_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("spec must be a JSON object");
  only_keys(doc, {"beads", "interaction", "seed"}, "spec");

  TwoLevelSpec spec;
  const json& seed = require(doc, "seed", "spec");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    bad("spec: 'seed' must be a nonnegative integer");
  }
  spec.seed = seed.get<std::uint64_t>();

  const json& beads = require(doc, "beads", "spec");
  if (!beads.is_array() || beads.empty()) bad("spec: 'beads' must be a nonempty array");

  // ER beads without an explicit density are resolved after all beads are read.
  std::vector<std::size_t> matched;
  for (std::size_t t = 0; t < beads.size(); ++t) {
    const json& b = beads[t];
    const std::string where = "bead " + std::to_string(t);
    if (!b.is_object()) bad(where + ": must be an object");
    const json& kind = require(b, "kind", where);
    if (!kind.is_string()) bad(where + ": 'kind' must be a string");
    int label = static_cast<int>(t);
    if (auto it = b.find("label"); it != b.end()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
        bad(where + ": 'label' must be a nonnegative integer");
      }
      label = it->get<int>();
    }
    if (kind == "er") {
      only_keys(b, {"kind", "n", "p", "label"}, where);
      ErBead er{size_field(b, "n", where), 0.0};
      auto p = b.find("p");
      if (p == b.end() || (p->is_string() && *p == "match")) {
        matched.push_back(t);
      } else {
        er.p = probability(b, "p", where);
      }
      spec.beads.push_back({er, label});
    } else if (kind == "two_module") {
      only_keys(b, {"kind", "n1", "n2", "p1", "p2", "label"}, where);
      spec.beads.push_back({TwoModuleBead{size_field(b, "n1", where), size_field(b, "n2", where),
                                          probability(b, "p1", where), probability(b, "p2", where)},
                            label});
    } else {
      bad(where + ": unknown kind '" + kind.get<std::string>() + "'");
    }
  }
  if (!matched.empty()) {
    const TwoModuleBead* reference = nullptr;
    for (const BeadSpec& b : spec.beads) {
      if (const auto* m = std::get_if<TwoModuleBead>(&b.kind)) {
        reference = m;
        break;
      }
    }
    if (!reference) bad("ER bead density 'match' needs a two_module bead to match");
    const double p = matched_er_density(*reference);
    for (std::size_t t : matched) std::get<ErBead>(spec.beads[t].kind).p = p;
  }

  const json& inter = require(doc, "interaction", "spec");
  if (!inter.is_object()) bad("interaction must be an object");
  const json& ikind = require(inter, "kind", "interaction");
  if (ikind == "path_random") {
    only_keys(inter, {"kind", "p"}, "interaction");
    spec.interaction = PathRandom{probability(inter, "p", "interaction")};
  } else if (ikind == "global_random") {
    only_keys(inter, {"kind", "p"}, "interaction");
    spec.interaction = GlobalRandom{probability(inter, "p", "interaction")};
  } else if (ikind == "path_identity") {
    only_keys(inter, {"kind", "eps"}, "interaction");
    spec.interaction = PathIdentity{probability(inter, "eps", "interaction")};
  } else {
    bad("interaction: unknown kind " + ikind.dump());
  }

  validate(spec);
  return spec;
}

std::string spec_to_json(const TwoLevelSpec& spec) {
  json doc;
  doc["seed"] = spec.seed;
  json beads = json::array();
  for (const BeadSpec& b : spec.beads) {
    json item;
    if (const auto* er = std::get_if<ErBead>(&b.kind)) {
      item = {{"kind", "er"}, {"n", er->n}, {"p", er->p}};
    } else {
      const auto& m = std::get<TwoModuleBead>(b.kind);
      item = {{"kind", "two_module"}, {"n1", m.n1}, {"n2", m.n2}, {"p1", m.p1}, {"p2", m.p2}};
    }
    item["label"] = b.label;
    beads.push_back(std::move(item));
  }
  doc["beads"] = std::move(beads);
  if (const auto* pr = std::get_if<PathRandom>(&spec.interaction)) {
    doc["interaction"] = {{"kind", "path_random"}, {"p", pr->p}};
  } else if (const auto* gr = std::get_if<GlobalRandom>(&spec.interaction)) {
    doc["interaction"] = {{"kind", "global_random"}, {"p", gr->p}};
  } else {
    doc["interaction"] = {{"kind", "path_identity"},
                          {"eps", std::get<PathIdentity>(spec.interaction).eps}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace eigloc
