// JSON file formats: instances with integer or "p/q" rational utilities,
// allocations as bundles of good names, and move lists.
#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ef1path/core.hpp"

namespace ef1path {

// Instance files: {"agents": n, "goods": [names], "utilities": [rows]}.
// Utility entries are integers or "p/q" strings. A single row together with
// "identical": true stands for n equal rows.
inline Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("instance file must be a JSON object");
  if (!j.contains("agents") || !j["agents"].is_number_integer())
    throw InputError("instance file needs an integer \"agents\" field");
  if (!j.contains("goods") || !j["goods"].is_array())
    throw InputError("instance file needs a \"goods\" array");
  if (!j.contains("utilities") || !j["utilities"].is_array())
    throw InputError("instance file needs a \"utilities\" array");

  const int n = j["agents"].get<int>();
  std::vector<std::string> goods;
  for (const auto& g : j["goods"]) {
    if (!g.is_string()) throw InputError("good names must be strings");
    goods.push_back(g.get<std::string>());
  }

  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j["utilities"]) {
    if (!row.is_array()) throw InputError("each utility row must be an array");
    std::vector<Rational> parsed;
    for (const auto& v : row) {
      if (v.is_number_integer())
        parsed.push_back({v.get<std::int64_t>(), 1});
      else if (v.is_string())
        parsed.push_back(parse_rational(v.get<std::string>()));
      else
        throw InputError("utility entries must be integers or \"p/q\" strings");
    }
    rows.push_back(std::move(parsed));
  }
  bool identical = false;
  if (j.contains("identical")) {
    if (!j["identical"].is_boolean()) throw InputError("\"identical\" must be a boolean");
    identical = j["identical"].get<bool>();
  }
  if (identical && rows.size() == 1)
    rows.assign(static_cast<std::size_t>(n > 0 ? n : 0), rows[0]);
  if (static_cast<int>(rows.size()) != n)
    throw InputError("utility row count does not match the agent count");
  return normalize_instance(std::move(goods), rows);
}

// Writes the scaled integer rows; identical instances use the single-row
// shorthand.
inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["agents"] = inst.n();
  j["goods"] = inst.goods;
  nlohmann::json rows = nlohmann::json::array();
  const int emit = inst.identical ? 1 : inst.n();
  for (int i = 0; i < emit; ++i) rows.push_back(inst.util[i]);
  j["utilities"] = std::move(rows);
  if (inst.identical) j["identical"] = true;
  return j;
}

// Allocation files: {"bundles": [[good names]...]}, one list per agent,
// forming a partition of the instance's goods.
inline Allocation allocation_from_json(const Instance& inst, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("bundles") || !j["bundles"].is_array())
    throw InputError("allocation file needs a \"bundles\" array");
  const auto& bundles = j["bundles"];
  if (static_cast<int>(bundles.size()) != inst.n())
    throw InputError("allocation must list one bundle per agent");
  std::vector<std::vector<int>> indexed(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    if (!bundles[i].is_array()) throw InputError("each bundle must be an array of good names");
    for (const auto& name : bundles[i]) {
      if (!name.is_string()) throw InputError("bundle entries must be good names");
      indexed[i].push_back(inst.good_index(name.get<std::string>()));
    }
  }
  return Allocation::from_bundles(inst.n(), inst.m(), indexed);
}

inline nlohmann::json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  check_allocation(inst, alloc);
  nlohmann::json bundles = nlohmann::json::array();
  for (const auto& bundle : alloc.bundles(inst.n())) {
    nlohmann::json names = nlohmann::json::array();
    for (int g : bundle) names.push_back(inst.goods[g]);
    bundles.push_back(std::move(names));
  }
  nlohmann::json j;
  j["bundles"] = std::move(bundles);
  return j;
}

// Moves: {"kind": "exchange", "i": 1, "j": 2, "g": name, "h": name} or
// {"kind": "transfer", "i": 1, "j": 2, "g": name}. Agents are 1-based in
// files; "g" leaves agent i and, for exchanges, "h" leaves agent j.
inline nlohmann::json move_to_json(const Instance& inst, const Move& mv) {
  nlohmann::json j;
  j["kind"] = mv.kind == MoveKind::Exchange ? "exchange" : "transfer";
  j["i"] = mv.i + 1;
  j["j"] = mv.j + 1;
  j["g"] = inst.goods[mv.g];
  if (mv.kind == MoveKind::Exchange) j["h"] = inst.goods[mv.h];
  return j;
}

inline nlohmann::json moves_to_json(const Instance& inst, const std::vector<Move>& moves) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Move& mv : moves) arr.push_back(move_to_json(inst, mv));
  return arr;
}

inline Move move_from_json(const Instance& inst, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("move needs a \"kind\" field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "exchange" && kind != "transfer")
    throw InputError("move kind must be \"exchange\" or \"transfer\"");
  auto agent = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      throw InputError(std::string("move needs an integer \"") + key + "\" field");
    return j[key].get<int>() - 1;
  };
  auto good = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string())
      throw InputError(std::string("move needs a good name in \"") + key + "\"");
    return inst.good_index(j[key].get<std::string>());
  };
  const int i = agent("i"), jj = agent("j");
  if (kind == "transfer") return make_transfer(i, jj, good("g"));
  return make_exchange(i, jj, good("g"), good("h"));
}

inline std::vector<Move> moves_from_json(const Instance& inst, const nlohmann::json& arr) {
  if (!arr.is_array()) throw InputError("move list must be an array");
  std::vector<Move> out;
  for (const auto& j : arr) out.push_back(move_from_json(inst, j));
  return out;
}

// File helpers.
inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

inline Instance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

inline Allocation load_allocation(const Instance& inst, const std::string& path) {
  return allocation_from_json(inst, load_json(path));
}

}  // namespace ef1path
