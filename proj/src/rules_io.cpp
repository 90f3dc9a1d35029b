#include "scoring/rules_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace scoring {

namespace {

OctalRules rules_from_node(const YAML::Node& node, std::size_t index) {
  std::string where = "ruleset #" + std::to_string(index + 1);
  if (!node.IsMap()) throw std::invalid_argument(where + ": expected a mapping with name, digits and points");
  for (const char* key : {"name", "digits", "points"}) {
    if (!node[key]) throw std::invalid_argument(where + ": missing field '" + key + "'");
  }
  std::string name = node["name"].as<std::string>();
  where = "ruleset '" + name + "'";
  if (!node["digits"].IsSequence()) throw std::invalid_argument(where + ": 'digits' must be a list");
  if (!node["points"].IsSequence()) throw std::invalid_argument(where + ": 'points' must be a list");

  std::vector<int> digits;
  for (const auto& d : node["digits"]) {
    std::string text = d.as<std::string>();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw std::invalid_argument(where + ": digit '" + text + "' is not an integer");
    }
    digits.push_back(value);
  }
  std::vector<Score> points;
  for (const auto& p : node["points"]) {
    std::string text = p.as<std::string>();
    try {
      points.push_back(Score::parse(text));
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": point '" + text + "': " + e.what());
    }
  }
  return make_rules(std::move(name), std::move(digits), std::move(points));
}

std::vector<int> parse_int_list(std::string_view text, std::string_view spec) {
  std::vector<int> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw std::invalid_argument("bad integer list in '" + std::string(spec) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::vector<OctalRules> parse_rules_document(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("malformed rules document: ") + e.what());
  }
  std::vector<OctalRules> out;
  try {
    if (root.IsSequence()) {
      for (std::size_t i = 0; i < root.size(); ++i) out.push_back(rules_from_node(root[i], i));
    } else if (root.IsMap() && root["rulesets"]) {
      const auto seq = root["rulesets"];
      for (std::size_t i = 0; i < seq.size(); ++i) out.push_back(rules_from_node(seq[i], i));
    } else {
      out.push_back(rules_from_node(root, 0));
    }
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("malformed rules document: ") + e.what());
  }
  if (out.empty()) throw std::invalid_argument("rules document holds no ruleset");
  return out;
}

OctalRules parse_rules(std::string_view text) {
  auto all = parse_rules_document(text);
  if (all.size() != 1) throw std::invalid_argument("expected exactly one ruleset, found " + std::to_string(all.size()));
  return std::move(all.front());
}

std::string rules_document(const OctalRules& rules) {
  std::ostringstream os;
  os << "name: " << rules.name << "\ndigits: [";
  for (std::size_t i = 0; i < rules.digits.size(); ++i) os << (i ? ", " : "") << rules.digits[i];
  os << "]\npoints: [";
  for (std::size_t i = 0; i < rules.points.size(); ++i) os << (i ? ", " : "") << '"' << rules.points[i] << '"';
  os << "]\n";
  return os.str();
}

std::optional<OctalRules> builtin_rules(std::string_view spec) {
  if (spec == "sub45") return make_rules("sub45", {0, 0, 0, 3, 3}, {0, 0, 0, 4, 5});
  if (spec == "o3333p2") return make_rules("o3333p2", {3, 3, 3, 3}, {2, 2, 2, 2});
  if (spec == "o26") return make_rules("o26", {2, 6}, {1, 2});
  if (spec.starts_with("nim:")) {
    auto len = parse_int_list(spec.substr(4), spec);
    if (len.size() != 1) throw std::invalid_argument("nim:<len> takes one length");
    return standard_nim(len.front());
  }
  if (spec.starts_with("sub:")) {
    auto set = parse_int_list(spec.substr(4), spec);
    std::string name = "sub";
    for (int s : set) name += "_" + std::to_string(s);
    return subtraction_game(name, set);
  }
  return std::nullopt;
}

std::vector<OctalRules> load_rules(const std::string& ref) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(ref, ec)) {
    std::ifstream in(ref);
    if (!in) throw std::invalid_argument("cannot read rules file '" + ref + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_rules_document(buf.str());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(ref + ": " + e.what());
    }
  }
  if (auto rules = builtin_rules(ref)) return {std::move(*rules)};
  throw std::invalid_argument("rules '" + ref + "' is neither a readable file nor a built-in ruleset");
}

}  // namespace scoring
