#include "webtensor/manifest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace webtensor {

namespace {

constexpr int kMaxDim = 64;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string located(int line, const std::string& message) {
  std::ostringstream os;
  os << "line " << line << ": " << message;
  return os.str();
}

struct Parser {
  Manifest m;
  bool seen_dim = false;
  bool seen_vdim = false;
  bool seen_name = false;
  // canonical key -> (value, first line), for duplicate/conflict detection
  std::map<std::array<int, 3>, std::pair<Rat, int>> brackets;
  std::map<std::array<int, 3>, std::pair<Rat, int>> r_entries;   // (j<=k, alpha)
  std::map<std::array<int, 4>, std::pair<Rat, int>> s_entries;   // (j<=k<=l, alpha)

  [[noreturn]] void err(int line, const std::string& message) {
    throw ManifestError(line, message);
  }

  int parse_index(int line, const std::string& tok, const char* what) {
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      err(line, std::string("malformed ") + what + " '" + tok + "' (expected a positive integer)");
    int v = std::stoi(tok);
    if (v < 1) err(line, std::string(what) + " must be at least 1");
    return v;
  }

  Rat parse_value(int line, const std::string& tok) {
    std::optional<Rat> v = parse_rat(tok);
    if (!v) err(line, "malformed rational '" + tok + "' (expected p or p/q)");
    return *v;
  }

  void need_dims(int line) {
    if (!seen_dim || !seen_vdim) err(line, "entry before dim and v_dim directives");
  }

  void record(std::map<std::array<int, 3>, std::pair<Rat, int>>& table, int line,
              const std::array<int, 3>& key, const Rat& value, const char* what) {
    auto it = table.find(key);
    if (it == table.end()) {
      table.emplace(key, std::make_pair(value, line));
      return;
    }
    if (it->second.first != value)
      err(line, std::string("conflicting duplicate ") + what + " entry (first given at line " +
                    std::to_string(it->second.second) + ")");
  }

  void record4(int line, const std::array<int, 4>& key, const Rat& value) {
    auto it = s_entries.find(key);
    if (it == s_entries.end()) {
      s_entries.emplace(key, std::make_pair(value, line));
      return;
    }
    if (it->second.first != value)
      err(line, "conflicting duplicate S entry (first given at line " +
                    std::to_string(it->second.second) + ")");
  }

  void handle(int line, const std::vector<std::string>& tok) {
    const std::string& kw = tok[0];
    if (kw == "name") {
      err(line, "internal: name handled by caller");
    } else if (kw == "dim" || kw == "v_dim") {
      if (tok.size() != 2) err(line, kw + " expects one integer");
      int v = parse_index(line, tok[1], kw.c_str());
      bool& seen = (kw == "dim") ? seen_dim : seen_vdim;
      int& slot = (kw == "dim") ? m.dim : m.v_dim;
      if (seen && slot != v)
        err(line, "conflicting duplicate " + kw + " directive");
      if (kw == "dim" && v > kMaxDim)
        err(line, "dim too large (limit " + std::to_string(kMaxDim) + ")");
      slot = v;
      seen = true;
      if (seen_dim && seen_vdim && m.v_dim > m.dim)
        err(line, "v_dim out of range (need 1 <= v_dim <= dim)");
    } else if (kw == "bracket") {
      need_dims(line);
      if (tok.size() != 5) err(line, "bracket expects: bracket i j k p/q");
      int i = parse_index(line, tok[1], "index i");
      int j = parse_index(line, tok[2], "index j");
      int k = parse_index(line, tok[3], "index k");
      if (i > m.dim || j > m.dim || k > m.dim) err(line, "index out of range");
      Rat v = parse_value(line, tok[4]);
      if (i == j) {
        if (v != 0) err(line, "bracket with repeated index must have value 0");
        return;
      }
      // canonical orientation i < j
      if (i > j) {
        std::swap(i, j);
        v = -v;
      }
      record(brackets, line, {i, j, k}, v, "bracket");
    } else if (kw == "R") {
      need_dims(line);
      if (tok.size() != 5) err(line, "R expects: R j k alpha p/q");
      int j = parse_index(line, tok[1], "index j");
      int k = parse_index(line, tok[2], "index k");
      int alpha = parse_index(line, tok[3], "index alpha");
      if (j > m.v_dim || k > m.v_dim) err(line, "index out of range (R arguments must lie in V)");
      if (alpha <= m.v_dim || alpha > m.dim)
        err(line, "index out of range (R values must lie in the stabilizer)");
      Rat v = parse_value(line, tok[4]);
      record(r_entries, line, {std::min(j, k), std::max(j, k), alpha}, v, "R");
    } else if (kw == "S") {
      need_dims(line);
      if (tok.size() != 6) err(line, "S expects: S j k l alpha p/q");
      std::array<int, 3> idx = {parse_index(line, tok[1], "index j"),
                                parse_index(line, tok[2], "index k"),
                                parse_index(line, tok[3], "index l")};
      int alpha = parse_index(line, tok[4], "index alpha");
      for (int x : idx)
        if (x > m.v_dim) err(line, "index out of range (S arguments must lie in V)");
      if (alpha <= m.v_dim || alpha > m.dim)
        err(line, "index out of range (S values must lie in the stabilizer)");
      Rat v = parse_value(line, tok[5]);
      std::sort(idx.begin(), idx.end());
      record4(line, {idx[0], idx[1], idx[2], alpha}, v);
    } else {
      err(line, "unknown directive '" + kw + "'");
    }
  }

  Manifest finish() {
    if (!seen_dim) throw ManifestError(0, "missing dim directive");
    if (!seen_vdim) throw ManifestError(0, "missing v_dim directive");
    if (m.v_dim < 1 || m.v_dim > m.dim)
      throw ManifestError(0, "v_dim out of range (need 1 <= v_dim <= dim)");
    m.algebra = LieAlgebra(m.dim);
    for (const auto& [key, val] : brackets)
      m.algebra.set_bracket(key[0] - 1, key[1] - 1, key[2] - 1, val.first);
    m.R = MultilinearMap(2, m.v_dim, m.dim);
    for (const auto& [key, val] : r_entries) {
      AlgVec unit = basis_vec(m.dim, key[2] - 1);
      m.R.add_value({key[0] - 1, key[1] - 1}, val.first, unit);
      if (key[0] != key[1]) m.R.add_value({key[1] - 1, key[0] - 1}, val.first, unit);
    }
    m.S = MultilinearMap(3, m.v_dim, m.dim);
    for (const auto& [key, val] : s_entries) {
      AlgVec unit = basis_vec(m.dim, key[3] - 1);
      std::array<int, 3> idx = {key[0] - 1, key[1] - 1, key[2] - 1};
      std::sort(idx.begin(), idx.end());
      // next_permutation enumerates each distinct ordering exactly once
      do {
        m.S.set_value({idx[0], idx[1], idx[2]}, vec_scaled(val.first, unit));
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
    return std::move(m);
  }
};

}  // namespace

ManifestError::ManifestError(int line, const std::string& message)
    : std::runtime_error(located(line, message)), line_(line), message_(message) {}

bool Manifest::operator==(const Manifest& other) const {
  return name == other.name && dim == other.dim && v_dim == other.v_dim &&
         algebra.c == other.algebra.c && R == other.R && S == other.S;
}

Manifest parse_manifest(const std::string& text) {
  Parser parser;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("name", 0) == 0 && (line.size() == 4 || line[4] == ' ' || line[4] == '\t')) {
      std::string label = trim(line.substr(4));
      if (parser.seen_name && parser.m.name != label)
        parser.err(line_no, "conflicting duplicate name directive");
      parser.m.name = label;
      parser.seen_name = true;
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    parser.handle(line_no, tok);
  }
  return parser.finish();
}

Manifest load_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError(0, "cannot open manifest file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string emit_manifest(const Manifest& m) {
  std::ostringstream out;
  if (!m.name.empty()) out << "name " << m.name << "\n";
  out << "dim " << m.dim << "\n";
  out << "v_dim " << m.v_dim << "\n";
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j)
      for (int k = 0; k < m.dim; ++k) {
        const Rat& v = m.algebra.structure(i, j, k);
        if (v != 0)
          out << "bracket " << (i + 1) << " " << (j + 1) << " " << (k + 1) << " "
              << rat_to_string(v) << "\n";
      }
  for (int j = 0; j < m.v_dim; ++j)
    for (int k = j; k < m.v_dim; ++k) {
      const AlgVec& val = m.R.value_at({j, k});
      for (int alpha = m.v_dim; alpha < m.dim; ++alpha)
        if (val[std::size_t(alpha)] != 0)
          out << "R " << (j + 1) << " " << (k + 1) << " " << (alpha + 1) << " "
              << rat_to_string(val[std::size_t(alpha)]) << "\n";
    }
  for (int j = 0; j < m.v_dim; ++j)
    for (int k = j; k < m.v_dim; ++k)
      for (int l = k; l < m.v_dim; ++l) {
        const AlgVec& val = m.S.value_at({j, k, l});
        for (int alpha = m.v_dim; alpha < m.dim; ++alpha)
          if (val[std::size_t(alpha)] != 0)
            out << "S " << (j + 1) << " " << (k + 1) << " " << (l + 1) << " " << (alpha + 1)
                << " " << rat_to_string(val[std::size_t(alpha)]) << "\n";
      }
  return out.str();
}

Instance build_instance(const Manifest& m) {
  Split split{m.dim, m.v_dim};
  return Instance{m.name.empty() ? std::string("manifest") : m.name, m.algebra, split,
                  make_section(split, m.R, m.S)};
}

}  // namespace webtensor
