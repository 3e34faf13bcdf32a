#include "overlap/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "overlap/error.hpp"

namespace overlap {

namespace {

/// Splits into lines, keeping 1-based numbers, trimming a trailing CR.
std::vector<std::pair<int, std::string>> numbered_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.emplace_back(no, line);
  }
  return out;
}

bool blank_or_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t");
  return first == std::string::npos || line[first] == '#';
}

/// Reads whitespace-separated integers; throws ParseError on anything else.
std::vector<long long> integers(std::istringstream& fields, int line_no) {
  std::vector<long long> out;
  std::string token;
  while (fields >> token) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "expected an integer, got '" + token + "'");
    }
    if (used != token.size()) throw ParseError(line_no, "expected an integer, got '" + token + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join_ids(const std::vector<Vertex>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

SimplicialComplex parse_complex(const std::string& text) {
  long long n = -1;
  std::vector<Simplex> simplices;
  int last = 0;
  for (const auto& [no, line] : numbered_lines(text)) {
    last = no;
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "c") {
      if (n >= 0) throw ParseError(no, "repeated 'c' header");
      const auto values = integers(fields, no);
      if (values.size() != 1 || values[0] < 0) throw ParseError(no, "'c' takes one non-negative vertex count");
      n = values[0];
    } else if (tag == "s") {
      if (n < 0) throw ParseError(no, "'s' line before the 'c' header");
      const auto values = integers(fields, no);
      if (values.empty()) throw ParseError(no, "empty simplex");
      Simplex s;
      for (long long v : values) {
        if (v < 0 || v >= n) throw ParseError(no, "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
        s.push_back(static_cast<Vertex>(v));
      }
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ParseError(no, "repeated vertex in a simplex");
      simplices.push_back(std::move(s));
    } else {
      throw ParseError(no, "unknown directive '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(last + 1, "missing 'c' header");
  return SimplicialComplex::from_simplices(simplices);
}

std::string emit_complex(const SimplicialComplex& complex) {
  std::string out = "c " + std::to_string(complex.empty() ? 0 : complex.vertices().back() + 1) + "\n";
  for (const auto& s : complex.maximal_simplices()) out += "s " + join_ids(s) + "\n";
  return out;
}

std::string emit_csv(const ProfileTable& table) {
  std::string out = "r,value,mode,witness\n";
  for (const auto& e : table.entries) {
    out += std::to_string(e.r) + "," + std::to_string(e.value) + "," + to_string(e.mode) + "," + join_ids(e.witness) +
           "\n";
  }
  return out;
}

ProfileTable parse_profile_csv(const std::string& text, Invariant invariant) {
  ProfileTable table;
  table.invariant = invariant;
  bool header = false;
  for (const auto& [no, line] : numbered_lines(text)) {
    if (line.empty()) continue;
    if (!header) {
      if (line != "r,value,mode,witness") throw ParseError(no, "expected header 'r,value,mode,witness'");
      header = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw ParseError(no, "expected 4 fields");
    ProfileEntry e;
    try {
      std::size_t used = 0;
      e.r = std::stoi(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("r");
      e.value = std::stoi(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("value");
    } catch (const std::logic_error&) {
      throw ParseError(no, "r and value must be integers");
    }
    if (e.r != static_cast<int>(table.entries.size())) throw ParseError(no, "rows must list r = 0, 1, 2, ... in order");
    if (fields[2] == "exact") {
      e.mode = EntryMode::exact;
    } else if (fields[2] == "lower_bound") {
      e.mode = EntryMode::lower_bound;
    } else {
      throw ParseError(no, "mode must be 'exact' or 'lower_bound'");
    }
    std::istringstream ids(fields[3]);
    for (long long v : integers(ids, no)) e.witness.push_back(static_cast<Vertex>(v));
    table.entries.push_back(std::move(e));
  }
  if (!header) throw ParseError(1, "missing header");
  return table;
}

std::string emit_csv(const Report& report) {
  std::string out = "check,lhs,rhs,pass\n";
  for (const auto& row : report.rows) {
    out += row.check + (row.binding ? "" : " (non-binding)") + "," + row.lhs + "," + row.rhs + "," +
           (row.pass ? "pass" : "fail") + "\n";
  }
  return out;
}

CubeFile parse_cubes(const std::string& text) {
  CubeFile file;
  int k = -1;
  std::vector<Root> roots;
  int last = 0;
  for (const auto& [no, line] : numbered_lines(text)) {
    last = no;
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    const auto values = integers(fields, no);
    if (k < 0) {
      if (values.size() != 2 || values[0] < 1 || values[1] < 2) throw ParseError(no, "header must be 'k r' with k >= 1, r >= 2");
      k = static_cast<int>(values[0]);
      file.r = static_cast<int>(values[1]);
      continue;
    }
    if (static_cast<int>(values.size()) != k) throw ParseError(no, "root must have " + std::to_string(k) + " coordinates");
    roots.emplace_back(values.begin(), values.end());
  }
  if (k < 0) throw ParseError(last + 1, "missing 'k r' header");
  file.cubes = CubeSet::from_roots(k, std::move(roots));
  return file;
}

std::vector<std::vector<Vertex>> parse_candidates(const std::string& text) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& [no, line] : numbered_lines(text)) {
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    std::vector<Vertex> set;
    for (long long v : integers(fields, no)) {
      if (v < 0) throw ParseError(no, "vertex ids are non-negative");
      set.push_back(static_cast<Vertex>(v));
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace overlap
