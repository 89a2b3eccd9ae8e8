// Copyright 2026 The hqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment configuration: flat `key = value` text and Pauli-sum
// Hamiltonians.
//
// Pauli sums are signed terms, each an optional real coefficient followed by
// `*`-joined single-qubit factors with 1-based qubit indices:
//
//     Z2*Z3
//     -0.92388*X2*Z3 - 0.38268*Y2*Z3
//     0.5 + X1          (a bare coefficient is a multiple of the identity)
//
// A config file holds one assignment per line; `#` starts a comment. Named
// Hamiltonians are declared as `h.<name> = <pauli sum>` and a loop is the
// ordered list `path = a, b, c, a`.

#pragma once

#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hqc/errors.hpp"
#include "hqc/operator.hpp"
#include "hqc/path.hpp"

namespace hqc {

/// Malformed configuration text or an unknown key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

inline Matrix pauli_matrix(char c) {
  switch (c) {
    case 'I': return pauli::I();
    case 'X': return pauli::X();
    case 'Y': return pauli::Y();
    case 'Z': return pauli::Z();
  }
  throw ConfigError(std::string("unknown Pauli factor '") + c + "'");
}

}  // namespace detail

/// Parses a Pauli sum on n qubits.
inline HermitianOperator parse_pauli_sum(std::string_view text, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 10) throw ConfigError("pauli sum: qubit count must be in [1, 10]");
  const Index dim = Index{1} << n_qubits;
  Matrix total = Matrix::Zero(dim, dim);
  const std::string src(detail::trim(text));
  if (src.empty()) throw ConfigError("pauli sum: empty expression");

  // Split into signed terms at top-level + and - (not inside an exponent).
  std::vector<std::pair<double, std::string>> terms;
  double sign = 1.0;
  std::string cur;
  auto flush = [&](std::size_t pos) {
    if (detail::trim(cur).empty()) {
      std::ostringstream os;
      os << "pauli sum: missing term before position " << pos << " in \"" << src << "\"";
      throw ConfigError(os.str());
    }
    terms.emplace_back(sign, std::string(detail::trim(cur)));
    cur.clear();
  };
  bool leading = true;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    const bool exponent = i > 1 && (src[i - 1] == 'e' || src[i - 1] == 'E') &&
                          std::isdigit(static_cast<unsigned char>(src[i - 2]));
    if ((c == '+' || c == '-') && !exponent) {
      if (leading && detail::trim(cur).empty()) {
        leading = false;
        sign = c == '-' ? -1.0 : 1.0;
        continue;
      }
      flush(i);
      sign = c == '-' ? -1.0 : 1.0;
    } else {
      cur += c;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) leading = false;
  }
  flush(src.size());

  for (const auto& [s, term] : terms) {
    double coeff = s;
    std::map<int, Matrix> factors;
    std::stringstream ts(term);
    std::string tok;
    bool have_coeff = false;
    while (std::getline(ts, tok, '*')) {
      const std::string_view t = detail::trim(tok);
      if (t.empty()) throw ConfigError("pauli sum: empty factor in \"" + term + "\"");
      if (auto v = detail::to_double(t)) {
        if (have_coeff || !factors.empty()) throw ConfigError("pauli sum: coefficient must lead the term \"" + term + "\"");
        coeff *= *v;
        have_coeff = true;
        continue;
      }
      const char op = static_cast<char>(std::toupper(static_cast<unsigned char>(t.front())));
      int q = 0;
      const char* end = t.data() + t.size();
      auto [p, ec] = std::from_chars(t.data() + 1, end, q);
      if (t.size() < 2 || ec != std::errc() || p != end) {
        throw ConfigError("pauli sum: bad factor \"" + std::string(t) + "\" (expected e.g. X2)");
      }
      if (q < 1 || q > n_qubits) {
        std::ostringstream os;
        os << "pauli sum: qubit index " << q << " outside 1.." << n_qubits;
        throw ConfigError(os.str());
      }
      if (factors.contains(q)) throw ConfigError("pauli sum: qubit repeated within the term \"" + term + "\"");
      factors[q] = detail::pauli_matrix(op);
    }
    total += pauli_string(n_qubits, factors, coeff).matrix();
  }
  return HermitianOperator(total);
}

/// Ordered key/value entries of a config file. Keys may repeat only where the
/// consumer allows it.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

inline std::vector<ConfigEntry> parse_config_text(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const std::string_view l = detail::trim(line);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << "config line " << n << ": expected key = value";
      throw ConfigError(os.str());
    }
    ConfigEntry e{std::string(detail::trim(l.substr(0, eq))), std::string(detail::trim(l.substr(eq + 1))), n};
    if (e.key.empty()) {
      std::ostringstream os;
      os << "config line " << n << ": empty key";
      throw ConfigError(os.str());
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

/// Typed view of a config: numeric settings, a schedule, and an optional loop.
struct ExperimentConfig {
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> words;
  /// Named Hamiltonians in declaration order and the ordered path through them.
  std::vector<std::pair<std::string, std::string>> hamiltonians;
  std::vector<std::string> path;

  std::optional<double> number(const std::string& k) const {
    if (auto it = numbers.find(k); it != numbers.end()) return it->second;
    return std::nullopt;
  }
  std::optional<std::string> word(const std::string& k) const {
    if (auto it = words.find(k); it != words.end()) return it->second;
    return std::nullopt;
  }
};

/// Checks keys against the allowed numeric and word keys; `h.<name>` and
/// `path` are accepted when `allow_path` is set. Numbers must be positive.
inline ExperimentConfig interpret_config(const std::vector<ConfigEntry>& entries, const std::set<std::string>& numeric,
                                         const std::set<std::string>& word_keys, bool allow_path) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  for (const auto& e : entries) {
    auto fail = [&](const std::string& what) {
      std::ostringstream os;
      os << "config line " << e.line << ": " << what;
      throw ConfigError(os.str());
    };
    const bool is_h = allow_path && e.key.rfind("h.", 0) == 0 && e.key.size() > 2;
    if (!is_h && seen.contains(e.key)) fail("duplicate key '" + e.key + "'");
    seen.insert(e.key);
    if (numeric.contains(e.key)) {
      const auto v = detail::to_double(e.value);
      if (!v || !std::isfinite(*v)) fail("key '" + e.key + "' needs a number, got \"" + e.value + "\"");
      if (!(*v > 0.0)) fail("key '" + e.key + "' must be positive");
      cfg.numbers[e.key] = *v;
    } else if (word_keys.contains(e.key)) {
      cfg.words[e.key] = e.value;
    } else if (is_h) {
      const std::string name = e.key.substr(2);
      for (const auto& [n, _] : cfg.hamiltonians)
        if (n == name) fail("Hamiltonian '" + name + "' defined twice");
      cfg.hamiltonians.emplace_back(name, e.value);
    } else if (allow_path && e.key == "path") {
      std::stringstream ss(e.value);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.path.emplace_back(detail::trim(item));
    } else {
      fail("unknown key '" + e.key + "'");
    }
  }
  return cfg;
}

inline Schedule parse_schedule(const std::string& name) {
  if (name == "linear") return Schedule(ScheduleKind::linear);
  if (name == "cosine") return Schedule(ScheduleKind::cosine);
  throw ConfigError("unknown schedule '" + name + "' (expected linear or cosine)");
}

/// Builds the configured loop: one segment per consecutive pair of `path`
/// names, equal durations summing to `total_duration`.
inline HamiltonianPath build_config_path(const ExperimentConfig& cfg, int n_qubits, double total_duration,
                                         Schedule schedule) {
  if (cfg.path.size() < 2) throw ConfigError("config: 'path' needs at least two Hamiltonian names");
  std::map<std::string, HermitianOperator> named;
  for (const auto& [name, expr] : cfg.hamiltonians) {
    try {
      named.emplace(name, parse_pauli_sum(expr, n_qubits));
    } catch (const ConfigError& e) {
      throw ConfigError("config: h." + name + ": " + e.what());
    }
  }
  std::vector<PathSegment> segs;
  const double each = total_duration / static_cast<double>(cfg.path.size() - 1);
  for (std::size_t k = 0; k + 1 < cfg.path.size(); ++k) {
    for (std::size_t j : {k, k + 1}) {
      if (!named.contains(cfg.path[j])) throw ConfigError("config: path names undefined Hamiltonian '" + cfg.path[j] + "'");
    }
    segs.emplace_back(named.at(cfg.path[k]), named.at(cfg.path[k + 1]), schedule, each);
  }
  return HamiltonianPath(std::move(segs));
}

}  // namespace hqc
