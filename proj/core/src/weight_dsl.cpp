#include <charconv>
#include <map>
#include <string>
#include <vector>

#include "chebpert/errors.hpp"
#include "chebpert/weights.hpp"

namespace chebpert {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("weight: cannot parse '" + std::string(text) + "' as a real for " + std::string(what));
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("weight: cannot parse '" + std::string(text) + "' as an integer for " + std::string(what));
  }
  return v;
}

using Params = std::map<std::string, std::vector<std::string>, std::less<>>;

// "c=1,0,0.5,m=4" -> {c: [1, 0, 0.5], m: [4]}
Params split_params(std::string_view body) {
  Params params;
  std::string current;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view token = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    if (token.empty()) throw ParseError("weight: empty parameter");
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      if (current.empty()) throw ParseError("weight: value '" + std::string(token) + "' has no key");
      params[current].emplace_back(token);
      continue;
    }
    current = std::string(trim(token.substr(0, eq)));
    if (params.count(current)) throw ParseError("weight: duplicate key '" + current + "'");
    params[current].emplace_back(trim(token.substr(eq + 1)));
  }
  return params;
}

const std::string& single(const Params& p, const std::string& key, std::string_view family) {
  const auto it = p.find(key);
  if (it == p.end()) throw ParseError("weight " + std::string(family) + ": missing key '" + key + "'");
  if (it->second.size() != 1) throw ParseError("weight " + std::string(family) + ": key '" + key + "' takes one value");
  return it->second.front();
}

void reject_unknown(const Params& p, std::initializer_list<std::string_view> allowed, std::string_view family) {
  for (const auto& [key, _] : p) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("weight " + std::string(family) + ": unknown key '" + key + "'");
  }
}

int smoothness(const Params& p, std::string_view family) {
  return p.count("m") ? parse_int(single(p, "m", family), "m") : 3;
}

}  // namespace

WeightSpec WeightSpec::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("weight: expected '<family>:<key>=<value>,...' but got '" + std::string(text) + "'");
  }
  const std::string_view family = trim(text.substr(0, colon));
  const Params p = split_params(text.substr(colon + 1));

  if (family == "const") {
    reject_unknown(p, {"c", "m"}, family);
    return constant(parse_real(single(p, "c", family), "c"), smoothness(p, family));
  }
  if (family == "exp") {
    reject_unknown(p, {"alpha", "m"}, family);
    return exponential(parse_real(single(p, "alpha", family), "alpha"), smoothness(p, family));
  }
  if (family == "recip-poly") {
    reject_unknown(p, {"c", "m"}, family);
    const auto it = p.find("c");
    if (it == p.end()) throw ParseError("weight recip-poly: missing key 'c'");
    std::vector<double> coeffs;
    for (const auto& v : it->second) coeffs.push_back(parse_real(v, "c"));
    return reciprocal_polynomial(std::move(coeffs), smoothness(p, family));
  }
  if (family == "holder") {
    reject_unknown(p, {"c", "beta", "x0", "m"}, family);
    return holder(parse_real(single(p, "c", family), "c"), parse_real(single(p, "beta", family), "beta"),
                  parse_real(single(p, "x0", family), "x0"), parse_int(single(p, "m", family), "m"));
  }
  throw ParseError("weight: unknown family '" + std::string(family) + "' (expected const, exp, recip-poly or holder)");
}

}  // namespace chebpert
