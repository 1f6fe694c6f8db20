#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "potts/solver/specialize.hpp"

namespace potts {

inline constexpr const char* kFormatTag = "potts-series/1";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads the textual form written by to_string(RatFrac): either a polynomial
// or "(num)/(den)".
inline RatFrac parse_frac(const std::string& s) {
  auto parser = make_potts_parser<PottsVars>();
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0) {
        if (i + 2 < s.size() && s[i + 1] == '/' && s[i + 2] == '(')
          return RatFrac(parser.parse(s.substr(1, i - 1)), parser.parse(s.substr(i + 3, s.size() - i - 4)));
        break;
      }
    }
  }
  return RatFrac(parser.parse(s));
}

namespace detail {

template <class C>
nlohmann::json table_json(const std::vector<std::vector<C>>& t, std::size_t rows) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < rows && i < t.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : t[i]) row.push_back(to_string(c));
    out.push_back(std::move(row));
  }
  return out;
}

template <class C>
nlohmann::json coeffs_json(const Series<C>& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : s.coeffs()) out.push_back(to_string(c));
  return out;
}

inline nlohmann::json bindings_json(const Bindings& b) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [v, val] : b) out[std::string(PottsVars::kNames[v])] = to_string(val);
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const SolverState& st) {
  const auto n = static_cast<std::size_t>(st.order_done + 1);
  nlohmann::json j;
  j["format"] = kFormatTag;
  j["kind"] = "solution";
  j["model"] = std::string(name(st.spec.model));
  j["size_var"] = name(st.spec.size_var);
  j["order"] = st.order_done;
  j["tables"] = {{"P", detail::table_json(st.p, n)},
                 {"Q", detail::table_json(st.q, n)},
                 {"R", detail::table_json(st.r, n - 1)}};
  j["main"] = detail::coeffs_json(st.main);
  nlohmann::json dets = nlohmann::json::array();
  for (std::size_t i = 1; i < st.determinants.size(); ++i) dets.push_back(to_string(st.determinants[i]));
  j["determinants"] = dets;
  return j;
}

inline nlohmann::json to_json(const SpecializedState& st) {
  const auto n = static_cast<std::size_t>(st.order_done + 1);
  nlohmann::json j;
  j["format"] = kFormatTag;
  j["kind"] = "solution";
  j["model"] = std::string(name(st.model));
  j["size_var"] = name(st.main.var());
  j["order"] = st.order_done;
  j["bindings"] = detail::bindings_json(st.bindings);
  j["tables"] = {{"P", detail::table_json(st.p, n)},
                 {"Q", detail::table_json(st.q, n)},
                 {"R", detail::table_json(st.r, n - 1)}};
  j["main"] = detail::coeffs_json(st.main);
  return j;
}

template <class C>
nlohmann::json series_json(const std::string& series_name, const Series<C>& s) {
  nlohmann::json j;
  j["format"] = kFormatTag;
  j["kind"] = "series";
  j["name"] = series_name;
  j["size_var"] = name(s.var());
  j["order"] = s.order();
  j["coefficients"] = detail::coeffs_json(s);
  return j;
}

// The main series of a solution file, or the coefficients of a series file.
inline FracSeries read_series(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != kFormatTag)
    throw FormatError(std::string("not a ") + kFormatTag + " document");
  const std::string kind = j.value("kind", "");
  const char* key = kind == "solution" ? "main" : kind == "series" ? "coefficients" : nullptr;
  if (key == nullptr || !j.contains(key)) throw FormatError("document has no series");
  const SizeVar var = j.value("size_var", "t") == "w" ? SizeVar::w : SizeVar::t;
  std::vector<RatFrac> cs;
  try {
    for (const auto& c : j.at(key)) cs.push_back(parse_frac(c.get<std::string>()));
  } catch (const ParseError& e) {
    throw FormatError(std::string("bad coefficient: ") + e.what());
  }
  if (cs.empty()) throw FormatError("empty series");
  return FracSeries(var, std::move(cs));
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << text;
}

}  // namespace potts
