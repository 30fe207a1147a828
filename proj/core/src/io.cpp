#include "bowtie/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bowtie::io {

using nlohmann::json;

std::string to_json(const elliptic::QExpansion& f) {
  json coeffs = json::array();
  for (std::int64_t n = 0; n <= f.trunc(); ++n) {
    const auto& a = f.coefficient(n);
    if (!a.is_zero()) coeffs.push_back({n, a.to_string()});
  }
  json j{{"weight", f.weight()}, {"trunc", f.trunc()}, {"coeffs", std::move(coeffs)}};
  return j.dump();
}

std::string to_json(const siegel2::SiegelExpansion& F) {
  json coeffs = json::array();
  // for_each walks (n, m, r); the file is sorted by (n, r, m)
  std::vector<std::pair<siegel2::HalfIntegralIndex, std::string>> entries;
  F.for_each([&](const siegel2::HalfIntegralIndex& N, const Rational& a) {
    if (!a.is_zero()) entries.emplace_back(N, a.to_string());
  });
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [N, a] : entries) coeffs.push_back({N.n, N.r, N.m, a});
  json j{{"weight", F.weight()}, {"trace_trunc", F.trace_trunc()}, {"coeffs", std::move(coeffs)}};
  return j.dump();
}

std::string to_json(const strong_symmetry::BowtieReport& report) {
  json v = json::array();
  for (const auto& x : report.violations) v.push_back({x.index.n, x.index.r, x.index.m, x.lhs.to_string(), x.rhs.to_string()});
  json j{{"weight", report.weight},
         {"prime", report.prime},
         {"window", report.window},
         {"violations", std::move(v)},
         {"pass", report.pass}};
  return j.dump();
}

elliptic::QExpansion qexpansion_from_json(const std::string& text) {
  const json j = json::parse(text);
  elliptic::QExpansion f(j.at("weight").get<int>(), j.at("trunc").get<std::int64_t>());
  for (const auto& e : j.at("coeffs")) f.set(e.at(0).get<std::int64_t>(), Rational::parse(e.at(1).get<std::string>()));
  return f;
}

siegel2::SiegelExpansion siegel_expansion_from_json(const std::string& text) {
  const json j = json::parse(text);
  siegel2::SiegelExpansion F(j.at("weight").get<int>(), j.at("trace_trunc").get<std::int64_t>());
  for (const auto& e : j.at("coeffs")) {
    F.set(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>(), e.at(2).get<std::int64_t>(),
          Rational::parse(e.at(3).get<std::string>()));
  }
  return F;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bowtie::io
