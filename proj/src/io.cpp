#include "cohesion/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(',', pos);
    out.push_back(trim(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  throw Error(ErrorKind::parse, os.str());
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_mass(std::string_view s, double& out) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_double(s, out);
  double num = 0.0, den = 0.0;
  if (!parse_double(trim(s.substr(0, slash)), num) || !parse_double(trim(s.substr(slash + 1)), den) || den == 0.0) {
    return false;
  }
  out = num / den;
  return true;
}

JointDistribution finish(int n, std::optional<int> q, Symbol max_symbol, std::vector<Atom> atoms,
                         const ReadOptions& opts) {
  int alphabet = opts.q ? *opts.q : q ? *q : std::max<int>(2, static_cast<int>(max_symbol) + 1);
  return JointDistribution::from_atoms(n, alphabet, std::move(atoms),
                                       opts.normalize ? JointDistribution::Normalize::yes
                                                      : JointDistribution::Normalize::no);
}

}  // namespace

JointDistribution parse_distribution_csv(std::istream& in, const std::string& source, const ReadOptions& opts) {
  std::string raw;
  std::size_t line_no = 0;
  int n = -1;
  std::optional<int> meta_q;
  Symbol max_symbol = 0;
  std::vector<Atom> atoms;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (body.rfind("q:", 0) == 0) {
        int v = 0;
        const auto t = trim(body.substr(2));
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || v < 2) fail(source, line_no, "bad q comment");
        meta_q = v;
      }
      continue;
    }
    const auto fields = split(line);
    if (n < 0) {
      if (fields.size() < 2 || fields.back() != "p") fail(source, line_no, "header must be x0,...,x{n-1},p");
      for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
        if (fields[i] != "x" + std::to_string(i)) {
          fail(source, line_no, "header column " + std::to_string(i + 1) + " should be x" + std::to_string(i));
        }
      }
      n = static_cast<int>(fields.size()) - 1;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(n) + 1) {
      fail(source, line_no, "expected " + std::to_string(n + 1) + " fields, got " + std::to_string(fields.size()));
    }
    Atom atom;
    atom.outcome.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto f = fields[static_cast<std::size_t>(i)];
      Symbol s = 0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), s);
      if (f.empty() || res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
        fail(source, line_no, "symbol '" + std::string(f) + "' is not a non-negative integer");
      }
      max_symbol = std::max(max_symbol, s);
      atom.outcome.push_back(s);
    }
    if (!parse_mass(fields.back(), atom.mass)) {
      fail(source, line_no, "probability '" + std::string(fields.back()) + "' is not a number");
    }
    if (atom.mass < 0.0) fail(source, line_no, "negative probability");
    atoms.push_back(std::move(atom));
  }
  if (n < 0) throw Error(ErrorKind::parse, source + ": missing header line");
  try {
    return finish(n, meta_q, max_symbol, std::move(atoms), opts);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, source + ": " + e.what());
  }
}

JointDistribution distribution_from_json(const nlohmann::json& j, const ReadOptions& opts) {
  try {
    const int n = j.at("n").get<int>();
    std::optional<int> q;
    if (j.contains("q")) q = j.at("q").get<int>();
    Symbol max_symbol = 0;
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      Atom atom;
      atom.outcome = a.at("x").get<std::vector<Symbol>>();
      atom.mass = a.at("p").get<double>();
      for (Symbol s : atom.outcome) max_symbol = std::max(max_symbol, s);
      atoms.push_back(std::move(atom));
    }
    return finish(n, q, max_symbol, std::move(atoms), opts);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("distribution JSON: ") + e.what());
  }
}

nlohmann::json distribution_to_json(const JointDistribution& p) {
  nlohmann::json atoms = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto o = p.outcome(i);
    atoms.push_back({{"x", std::vector<Symbol>(o.begin(), o.end())}, {"p", p.mass(i)}});
  }
  return {{"n", p.n()}, {"q", p.q()}, {"atoms", std::move(atoms)}};
}

JointDistribution read_distribution(const std::filesystem::path& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, path.string() + ": " + e.what());
    }
    return distribution_from_json(j, opts);
  }
  return parse_distribution_csv(in, path.string(), opts);
}

void write_distribution_csv(std::ostream& out, const JointDistribution& p, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "# q: " << p.q() << '\n';
  for (int i = 0; i < p.n(); ++i) out << 'x' << i << ',';
  out << "p\n";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (Symbol s : p.outcome(i)) out << s << ',';
    std::snprintf(buf, sizeof buf, "%.17g", p.mass(i));
    out << buf << '\n';
  }
}

void write_distribution_file(const std::filesystem::path& path, const JointDistribution& p,
                             const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  write_distribution_csv(out, p, comments);
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

}  // namespace cohesion
